#include "latdec/rainbow.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latdec {

namespace {

std::string vname(Vertex v, int n) {
  return (v < n ? "a" : "b") + std::to_string((v < n ? v : v - n) + 1);
}

std::pair<Vertex, Vertex> endpoints(const ColoredEdge& e, int n) { return {e.a, n + e.b}; }

bool touches(const ColoredEdge& e, Vertex v, int n) { return e.a == v || n + e.b == v; }

ColoredEdge edge_between(const ProperColoring& base, Vertex u, Vertex v) {
  const int n = base.order();
  const int a = u < n ? u : v;
  const int b = (u < n ? v : u) - n;
  return {a, b, base.color(a, b)};
}

}  // namespace

NearMatchingFamily NearMatchingFamily::make(const ProperColoring& base,
                                            const std::vector<std::vector<Edge>>& matchings,
                                            std::vector<std::vector<Vertex>> R,
                                            std::vector<std::vector<Vertex>> T) {
  NearMatchingFamily fam{base, {}, std::move(R), std::move(T)};
  const int n = base.order();
  for (const auto& m : matchings) {
    auto& out = fam.matchings.emplace_back();
    for (const Edge& e : m) {
      if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) throw InvalidInput("edge outside K_{n,n}");
      out.push_back({e.a, e.b, base.color(e)});
    }
    std::sort(out.begin(), out.end());
  }
  fam.R.resize(fam.matchings.size());
  fam.T.resize(fam.matchings.size());
  for (auto& s : fam.R) std::sort(s.begin(), s.end());
  for (auto& s : fam.T) std::sort(s.begin(), s.end());
  return fam;
}

int NearMatchingFamily::degree(int i, Vertex v) const {
  const int n = order();
  return static_cast<int>(std::count_if(matchings[i].begin(), matchings[i].end(),
                                        [&](const ColoredEdge& e) { return touches(e, v, n); }));
}

FamilyReport check_near_matching(const NearMatchingFamily& fam) {
  FamilyReport rep;
  const int n = fam.order();
  auto fail = [&](int i, Vertex v, std::string what) {
    rep.ok = false;
    rep.violations.push_back({i, v, std::move(what)});
  };
  if (fam.R.size() != fam.matchings.size() || fam.T.size() != fam.matchings.size()) {
    fail(-1, -1, "R and T must have one set per matching");
    return rep;
  }
  std::map<std::pair<int, int>, int> owner;
  for (int i = 0; i < fam.size(); ++i) {
    std::vector<int> deg(2 * n, 0);
    std::vector<int> color_uses(n, 0);
    for (const ColoredEdge& e : fam.matchings[i]) {
      if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
        fail(i, -1, "edge outside K_{n,n}");
        continue;
      }
      if (fam.base.color(e.a, e.b) != e.color) fail(i, -1, "edge colour disagrees with the base");
      if (auto [it, fresh] = owner.emplace(std::pair{e.a, e.b}, i); !fresh) {
        fail(i, -1, "edge shared with matching " + std::to_string(it->second + 1));
      }
      ++deg[e.a];
      ++deg[n + e.b];
      if (++color_uses[e.color] == 2) fail(i, -1, "repeated colour " + std::to_string(e.color + 1));
    }
    std::vector<char> in_r(2 * n, 0), in_t(2 * n, 0);
    for (Vertex v : fam.R[i]) {
      if (v < 0 || v >= 2 * n) { fail(i, v, "R vertex out of range"); continue; }
      in_r[v] = 1;
    }
    for (Vertex v : fam.T[i]) {
      if (v < 0 || v >= 2 * n) { fail(i, v, "T vertex out of range"); continue; }
      in_t[v] = 1;
      if (in_r[v]) fail(i, v, "vertex " + vname(v, n) + " in both R and T");
    }
    for (Vertex v = 0; v < 2 * n; ++v) {
      if (in_r[v] && deg[v] != 0) {
        fail(i, v, "vertex " + vname(v, n) + " in R has degree " + std::to_string(deg[v]));
      } else if (in_t[v] && !in_r[v] && deg[v] != 2) {
        fail(i, v, "vertex " + vname(v, n) + " in T has degree " + std::to_string(deg[v]));
      } else if (!in_r[v] && !in_t[v] && deg[v] > 1) {
        fail(i, v, "vertex " + vname(v, n) + " has degree " + std::to_string(deg[v]));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<ColoredEdge> Switcher::odd_edges(const ProperColoring& base) const {
  std::vector<ColoredEdge> out;
  for (std::size_t k = 0; k + 1 < path.size(); k += 2) out.push_back(edge_between(base, path[k], path[k + 1]));
  return out;
}

std::vector<ColoredEdge> Switcher::even_edges(const ProperColoring& base) const {
  std::vector<ColoredEdge> out;
  for (std::size_t k = 1; k + 1 < path.size(); k += 2) out.push_back(edge_between(base, path[k], path[k + 1]));
  return out;
}

std::optional<std::string> check_switcher(const NearMatchingFamily& fam, const Switcher& sw) {
  const int n = fam.order();
  if (sw.i < 0 || sw.i >= fam.size() || sw.j < 0 || sw.j >= fam.size()) return "index out of range";
  if (sw.i == sw.j) return "indices must differ";
  const int len = sw.length();
  if (len < kMinSwitcherLength || len % 2 != 0) return "length must be even and at least 4";
  std::set<Vertex> seen;
  for (std::size_t k = 0; k < sw.path.size(); ++k) {
    const Vertex v = sw.path[k];
    if (v < 0 || v >= 2 * n) return "vertex out of range";
    if (!seen.insert(v).second) return "path repeats vertex " + vname(v, n);
    if (k > 0 && same_side(sw.path[k - 1], v, n)) return "consecutive vertices on the same side";
  }
  const auto odd = sw.odd_edges(fam.base);
  const auto even = sw.even_edges(fam.base);
  for (const auto& e : odd)
    if (!std::binary_search(fam.matchings[sw.i].begin(), fam.matchings[sw.i].end(), e))
      return "odd edge not in M_i";
  for (const auto& e : even)
    if (!std::binary_search(fam.matchings[sw.j].begin(), fam.matchings[sw.j].end(), e))
      return "even edge not in M_j";
  std::vector<int> odd_c, even_c;
  for (const auto& e : odd) odd_c.push_back(e.color);
  for (const auto& e : even) even_c.push_back(e.color);
  std::sort(odd_c.begin(), odd_c.end());
  std::sort(even_c.begin(), even_c.end());
  if (std::adjacent_find(odd_c.begin(), odd_c.end()) != odd_c.end()) return "odd edges not rainbow";
  if (std::adjacent_find(even_c.begin(), even_c.end()) != even_c.end()) return "even edges not rainbow";
  if (odd_c != even_c) return "odd and even colour sets differ";
  return std::nullopt;
}

namespace {

struct SwitcherSearch {
  const NearMatchingFamily& fam;
  int n;
  // adjacency[side][v] = sorted (neighbour, colour) in M_i (side 0) or M_j (side 1)
  std::vector<std::vector<std::pair<Vertex, int>>> adj[2];
  Vertex target;
  int length = 0;
  std::vector<Vertex> path;
  std::vector<char> visited;
  std::vector<int> odd_count, even_count;  // per colour
  int odd_only = 0;   // colours used on odd edges but not even ones
  int even_only = 0;

  bool run() {
    const int k = static_cast<int>(path.size()) - 1;  // edges placed
    if (k == length) return path.back() == target && odd_only == 0 && even_only == 0;
    const int parity = k % 2;  // 0: next edge is odd (M_i)
    const int remaining = length - k;
    const int remaining_odd = (remaining + (parity == 0 ? 1 : 0)) / 2;
    const int remaining_even = remaining - remaining_odd;
    if (even_only > remaining_odd || odd_only > remaining_even) return false;
    for (const auto& [w, c] : adj[parity][path.back()]) {
      if (visited[w]) continue;
      if ((w == target) != (k + 1 == length)) continue;
      auto& mine = parity == 0 ? odd_count : even_count;
      auto& other = parity == 0 ? even_count : odd_count;
      if (mine[c]) continue;
      ++mine[c];
      const int d_odd = parity == 0 ? (other[c] ? 0 : 1) : (other[c] ? -1 : 0);
      const int d_even = parity == 1 ? (other[c] ? 0 : 1) : (other[c] ? -1 : 0);
      odd_only += d_odd;
      even_only += d_even;
      visited[w] = 1;
      path.push_back(w);
      if (run()) return true;
      path.pop_back();
      visited[w] = 0;
      odd_only -= d_odd;
      even_only -= d_even;
      --mine[c];
    }
    return false;
  }
};

}  // namespace

std::optional<Switcher> find_switcher(const NearMatchingFamily& fam, int i, int j, Vertex x,
                                      Vertex y, int max_len) {
  const int n = fam.order();
  if (i < 0 || i >= fam.size() || j < 0 || j >= fam.size()) throw InvalidInput("matching index out of range");
  if (i == j) throw InvalidInput("switcher needs two distinct matchings");
  if (x < 0 || x >= 2 * n || y < 0 || y >= 2 * n) throw InvalidInput("vertex out of range");
  if (x == y) throw InvalidInput("switcher endpoints must differ");
  if (!same_side(x, y, n)) throw InvalidInput("switcher endpoints must lie on the same side");

  SwitcherSearch s{fam, n, {}, y, 0, {}, {}, {}, {}, 0, 0};
  for (int side = 0; side < 2; ++side) {
    s.adj[side].assign(2 * n, {});
    for (const ColoredEdge& e : fam.matchings[side == 0 ? i : j]) {
      const auto [u, v] = endpoints(e, n);
      s.adj[side][u].emplace_back(v, e.color);
      s.adj[side][v].emplace_back(u, e.color);
    }
    for (auto& l : s.adj[side]) std::sort(l.begin(), l.end());
  }
  for (int len = kMinSwitcherLength; len <= max_len; len += 2) {
    s.length = len;
    s.path.assign(1, x);
    s.visited.assign(2 * n, 0);
    s.visited[x] = 1;
    s.odd_count.assign(n, 0);
    s.even_count.assign(n, 0);
    s.odd_only = s.even_only = 0;
    if (s.run()) return Switcher{i, j, s.path};
  }
  return std::nullopt;
}

NearMatchingFamily apply_switcher(const NearMatchingFamily& fam, const Switcher& sw) {
  if (auto err = check_switcher(fam, sw)) throw InvalidInput("switcher inconsistent with family: " + *err);
  NearMatchingFamily out = fam;
  const auto odd = sw.odd_edges(fam.base);
  const auto even = sw.even_edges(fam.base);
  auto swap_edges = [](std::vector<ColoredEdge>& m, const std::vector<ColoredEdge>& remove,
                       const std::vector<ColoredEdge>& add) {
    std::erase_if(m, [&](const ColoredEdge& e) {
      return std::find(remove.begin(), remove.end(), e) != remove.end();
    });
    m.insert(m.end(), add.begin(), add.end());
    std::sort(m.begin(), m.end());
  };
  swap_edges(out.matchings[sw.i], odd, even);
  swap_edges(out.matchings[sw.j], even, odd);
  return out;
}

Switcher transposed(const Switcher& sw) { return Switcher{sw.j, sw.i, sw.path}; }

std::optional<std::string> check_switch_postconditions(const NearMatchingFamily& before,
                                                       const NearMatchingFamily& after,
                                                       const Switcher& sw) {
  const int n = before.order();
  if (before.size() != after.size()) return "family size changed";
  for (int k = 0; k < before.size(); ++k) {
    if (k != sw.i && k != sw.j && before.matchings[k] != after.matchings[k])
      return "matching " + std::to_string(k + 1) + " changed";
  }
  auto colours = [](const std::vector<ColoredEdge>& m) {
    std::vector<int> c;
    for (const auto& e : m) c.push_back(e.color);
    std::sort(c.begin(), c.end());
    return c;
  };
  for (int k : {sw.i, sw.j}) {
    if (before.matchings[k].size() != after.matchings[k].size()) return "matching size changed";
    if (colours(before.matchings[k]) != colours(after.matchings[k])) return "colour multiset changed";
  }
  std::vector<ColoredEdge> u_before = before.matchings[sw.i], u_after = after.matchings[sw.i];
  u_before.insert(u_before.end(), before.matchings[sw.j].begin(), before.matchings[sw.j].end());
  u_after.insert(u_after.end(), after.matchings[sw.j].begin(), after.matchings[sw.j].end());
  std::sort(u_before.begin(), u_before.end());
  std::sort(u_after.begin(), u_after.end());
  if (u_before != u_after) return "M_i + M_j multiset changed";
  for (Vertex v = 0; v < 2 * n; ++v) {
    const int di = after.degree(sw.i, v) - before.degree(sw.i, v);
    const int dj = after.degree(sw.j, v) - before.degree(sw.j, v);
    const int want_i = v == sw.x() ? -1 : v == sw.y() ? 1 : 0;
    if (di != want_i || dj != -want_i) return "unexpected degree change at " + vname(v, n);
  }
  std::set<std::pair<int, int>> all;
  std::size_t total = 0;
  for (const auto& m : after.matchings) {
    for (const auto& e : m) all.insert({e.a, e.b});
    total += m.size();
  }
  if (all.size() != total) return "family no longer edge-disjoint";
  for (int k : {sw.i, sw.j}) {
    auto c = colours(after.matchings[k]);
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) return "matching no longer rainbow";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

SwitchPair SwitchPair::normalized() const {
  return second < first ? SwitchPair{second, first} : *this;
}

RequestDegrees::RequestDegrees(const SwitchRequestSet& set) {
  std::map<IndexedVertex, std::pair<int, int>> t;
  for (const auto& p : set.pairs) {
    ++t[{p.first.index, p.first.vertex}].first;    // p.first.vertex -> p.second.vertex, colour first.index
    ++t[{p.first.index, p.second.vertex}].second;
    ++t[{p.second.index, p.second.vertex}].first;  // p.second.vertex -> p.first.vertex, colour second.index
    ++t[{p.second.index, p.first.vertex}].second;
  }
  table_.assign(t.begin(), t.end());
}

int RequestDegrees::out(int i, int u) const {
  auto it = std::lower_bound(table_.begin(), table_.end(), IndexedVertex{i, u},
                             [](const auto& e, const IndexedVertex& k) { return e.first < k; });
  return it != table_.end() && it->first == IndexedVertex{i, u} ? it->second.first : 0;
}

int RequestDegrees::in(int i, int u) const {
  auto it = std::lower_bound(table_.begin(), table_.end(), IndexedVertex{i, u},
                             [](const auto& e, const IndexedVertex& k) { return e.first < k; });
  return it != table_.end() && it->first == IndexedVertex{i, u} ? it->second.second : 0;
}

bool is_le1_balanced(const SwitchRequestSet& set, int i, int u) {
  const RequestDegrees deg(set);
  const int o = deg.out(i, u), in = deg.in(i, u);
  return (o == 1 && in == 1) || (o == 0 && in == 0);
}

// ---------------------------------------------------------------------------

nlohmann::json family_to_json(const NearMatchingFamily& fam) {
  const int n = fam.order();
  nlohmann::json j;
  j["n"] = n;
  j["m"] = fam.size();
  auto& colors = j["colors"] = nlohmann::json::array();
  for (int a = 0; a < n; ++a) {
    auto row = nlohmann::json::array();
    for (int b = 0; b < n; ++b) row.push_back(fam.base.color(a, b) + 1);
    colors.push_back(row);
  }
  auto& ms = j["matchings"] = nlohmann::json::array();
  for (const auto& m : fam.matchings) {
    auto arr = nlohmann::json::array();
    for (const auto& e : m) arr.push_back({e.a + 1, e.b + 1});
    ms.push_back(arr);
  }
  auto sets = [](const std::vector<std::vector<Vertex>>& s) {
    auto arr = nlohmann::json::array();
    for (const auto& vs : s) {
      auto inner = nlohmann::json::array();
      for (Vertex v : vs) inner.push_back(v + 1);
      arr.push_back(inner);
    }
    return arr;
  };
  j["R"] = sets(fam.R);
  j["T"] = sets(fam.T);
  return j;
}

NearMatchingFamily family_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<int> colors;
    for (const auto& row : j.at("colors"))
      for (const auto& c : row) colors.push_back(c.get<int>() - 1);
    auto base = ProperColoring::from_matrix(n, std::move(colors));
    std::vector<std::vector<Edge>> ms;
    for (const auto& m : j.at("matchings")) {
      auto& out = ms.emplace_back();
      for (const auto& e : m) out.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
    }
    auto sets = [&](const char* key) {
      std::vector<std::vector<Vertex>> out(ms.size());
      if (!j.contains(key)) return out;
      const auto& arr = j.at(key);
      if (arr.size() != ms.size()) throw InvalidInput(std::string(key) + " must have one set per matching");
      for (std::size_t i = 0; i < arr.size(); ++i)
        for (const auto& v : arr[i]) out[i].push_back(v.get<int>() - 1);
      return out;
    };
    auto R = sets("R");
    auto T = sets("T");
    if (j.contains("m") && j.at("m").get<std::size_t>() != ms.size())
      throw InvalidInput("m disagrees with the number of matchings");
    return NearMatchingFamily::make(base, ms, std::move(R), std::move(T));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed family JSON: ") + e.what());
  }
}

}  // namespace latdec
