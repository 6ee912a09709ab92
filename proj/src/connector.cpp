#include "latdec/connector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace latdec {

std::vector<int> ConnectorGraph::roots() const {
  std::vector<int> r(m);
  for (int k = 0; k < m; ++k) r[k] = root(k);
  return r;
}

int ConnectorGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj) d = std::max(d, a.size());
  return static_cast<int>(d);
}

std::size_t ConnectorGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& a : adj) twice += a.size();
  return twice / 2;
}

std::vector<int> ConnectorGraph::tree_level(int root_index, int level) const {
  const long long j = root_index + 1;
  const long long size = 1LL << level;
  std::vector<int> out;
  out.reserve(size);
  for (long long t = size * (j - 1) + 1; t <= size * j; ++t) out.push_back(static_cast<int>((t - 1) % width) + 1);
  return out;
}

std::vector<int> ConnectorGraph::tree_vertices(int root_index) const {
  std::vector<int> out;
  for (int i = 0; i <= ell; ++i)
    for (int j : tree_level(root_index, i)) out.push_back(vertex(i, j));
  return out;
}

int connector_depth(int N, double spread) {
  if (N < 2) throw InvalidInput("connector needs N >= 2");
  if (!(spread >= 1.0)) throw InvalidInput("connector spread must be >= 1");
  const double bound = N / (spread * std::log2(static_cast<double>(N)));
  int ell = 0;
  while (std::ldexp(1.0, ell + 1) <= bound) ++ell;
  if (std::ldexp(1.0, ell) > bound || ell < 1)
    throw InvalidInput("connector too small: N / (spread log2 N) = " + std::to_string(bound) + " < 2");
  return ell;
}

ConnectorGraph build_connector(int N, int m, double spread) {
  const int ell = connector_depth(N, spread);
  const int width = 1 << ell;
  if (static_cast<long long>(ell + 1) * width > N) throw InvalidInput("levels do not fit in N vertices");
  if (m < 0 || m > width)
    throw InvalidInput("root count " + std::to_string(m) + " exceeds level width " + std::to_string(width));
  ConnectorGraph K;
  K.N = N;
  K.m = m;
  K.spread = spread;
  K.ell = ell;
  K.width = width;
  K.adj.assign(N, {});
  for (int i = 0; i < ell; ++i) {
    for (int j = 1; j <= width; ++j) {
      for (int r = 1; r <= 2; ++r) {
        const int s = (2 * (j - 1) + r - 1) % width + 1;
        const int a = K.vertex(i, j), b = K.vertex(i + 1, s);
        K.adj[a].push_back(b);
        K.adj[b].push_back(a);
      }
    }
  }
  for (auto& a : K.adj) std::sort(a.begin(), a.end());
  return K;
}

namespace {

// Routes pairs[order[0]], pairs[order[1]], ... greedily. On success fills
// paths (indexed like pairs) and returns nullopt; otherwise returns the
// position in `order` that failed and why.
std::optional<std::pair<std::size_t, std::string>> route_in_order(const ConnectorGraph& K,
                                                                  const std::vector<std::pair<int, int>>& pairs,
                                                                  const std::vector<std::size_t>& order,
                                                                  std::vector<std::vector<int>>& paths) {
  std::vector<char> used(K.N, 0);
  std::vector<int> in_tree(K.N, 0), comp(K.N, 0), parent(K.N, -1);
  paths.assign(pairs.size(), {});
  int stamp = 0;
  // Marks the component of the root in its pruned tree with bit `bit`.
  auto pruned_component = [&](int root_index, int bit) {
    for (int v : K.tree_vertices(root_index)) in_tree[v] = stamp * 4 + bit;
    std::deque<int> q{K.root(root_index)};
    comp[q.front()] |= bit;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int w : K.adj[v]) {
        if (used[w] || in_tree[w] != stamp * 4 + bit || (comp[w] & bit)) continue;
        comp[w] |= bit;
        q.push_back(w);
      }
    }
  };
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto [a, b] = pairs[order[pos]];
    ++stamp;
    std::fill(comp.begin(), comp.end(), 0);
    const int x = K.root(a), y = K.root(b);
    pruned_component(a, 1);
    pruned_component(b, 2);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<int> q{x};
    parent[x] = x;
    while (!q.empty() && parent[y] < 0) {
      const int v = q.front();
      q.pop_front();
      for (int w : K.adj[v]) {
        if (parent[w] >= 0 || (comp[v] & comp[w]) == 0) continue;
        parent[w] = v;
        q.push_back(w);
      }
    }
    const std::string tag = "roots " + std::to_string(a + 1) + " and " + std::to_string(b + 1);
    if (parent[y] < 0) return std::pair{pos, "cannot route " + tag};
    std::vector<int> path{y};
    while (path.back() != x) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    std::vector<int> per_level(K.ell + 1, 0);
    for (int v : path)
      if (++per_level[K.level_of(v)] > 2) return std::pair{pos, "path for " + tag + " meets a level three times"};
    for (int v : path) used[v] = 1;
    paths[order[pos]] = std::move(path);
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<int>> route_pairs(const ConnectorGraph& K,
                                          const std::vector<std::pair<int, int>>& pairs) {
  std::vector<char> taken(K.N, 0);
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= K.m || b < 0 || b >= K.m || a == b) throw InvalidInput("pair outside the roots");
    for (int r : {a, b}) {
      if (taken[K.root(r)]) throw InvalidInput("pairs are not disjoint");
      taken[K.root(r)] = 1;
    }
  }
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::vector<int>> paths;
  std::pair<std::size_t, std::string> last;
  for (int attempt = 0; attempt < kRouteAttempts; ++attempt) {
    const auto fail = route_in_order(K, pairs, order, paths);
    if (!fail) return paths;
    last = {order[fail->first], fail->second};
    // the pair that got stuck goes first next time
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(fail->first),
                order.begin() + static_cast<std::ptrdiff_t>(fail->first) + 1);
  }
  throw RoutingError(pairs[last.first], last.second);
}

std::optional<std::string> check_routing(const ConnectorGraph& K,
                                         const std::vector<std::pair<int, int>>& pairs,
                                         const std::vector<std::vector<int>>& paths) {
  if (paths.size() != pairs.size()) return "one path per pair expected";
  std::vector<char> seen(K.N, 0);
  for (std::size_t t = 0; t < paths.size(); ++t) {
    const auto& p = paths[t];
    const std::string tag = "path " + std::to_string(t + 1);
    if (p.empty() || p.front() != K.root(pairs[t].first) || p.back() != K.root(pairs[t].second))
      return tag + " has the wrong endpoints";
    std::vector<int> per_level(K.ell + 1, 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      const int v = p[k];
      if (v < 0 || v >= K.N || K.level_of(v) < 0) return tag + " leaves the levels";
      if (seen[v]++) return tag + " reuses vertex " + std::to_string(v + 1);
      if (k > 0 && k + 1 < p.size() && K.level_of(v) == 0 && v % K.width < K.m)
        return tag + " passes through a root";
      if (++per_level[K.level_of(v)] > 2) return tag + " meets a level three times";
      if (k > 0 && !std::binary_search(K.adj[p[k - 1]].begin(), K.adj[p[k - 1]].end(), v))
        return tag + " uses a non-edge";
    }
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> random_maximal_pairing(int count, SeededRng& rng) {
  std::vector<int> r(count);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), rng.engine());
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k + 1 < count; k += 2) out.emplace_back(r[k], r[k + 1]);
  return out;
}

bool routes_all(const ConnectorGraph& K, int count, int trials, SeededRng& rng) {
  for (int t = 0; t < trials; ++t) {
    const auto pairs = random_maximal_pairing(count, rng);
    try {
      const auto paths = route_pairs(K, pairs);
      if (check_routing(K, pairs, paths)) return false;
    } catch (const RoutingError&) {
      return false;
    }
  }
  return true;
}

int certify_connector(ConnectorGraph& K, SeededRng& rng, int trials) {
  auto ok = [&](int count) {
    SeededRng stream = rng.derive(static_cast<std::uint64_t>(count));
    return routes_all(K, count, trials, stream);
  };
  int good = std::min(K.m, 1);
  int bad = K.m + 1;
  for (int c = 2; c <= K.m; c *= 2) {
    if (!ok(c)) {
      bad = c;
      break;
    }
    good = c;
  }
  if (bad == K.m + 1 && good < K.m) {
    if (ok(K.m)) good = K.m;
    else bad = K.m;
  }
  while (bad - good > 1) {
    const int mid = good + (bad - good) / 2;
    if (ok(mid)) good = mid;
    else bad = mid;
  }
  K.probed_m = good;
  // margin, then confirm on ten times as many fresh pairings
  int cand = good >= 10 ? good - good / 5 : good;
  while (cand > 2) {
    SeededRng confirm = rng.derive((std::uint64_t{1} << 32) | static_cast<std::uint64_t>(cand));
    if (routes_all(K, cand, 10 * trials, confirm)) break;
    --cand;
  }
  K.certified_m = cand;
  return cand;
}

nlohmann::json connector_to_json(const ConnectorGraph& K) {
  nlohmann::json j{{"N", K.N}, {"m", K.m}, {"spread", K.spread}, {"ell", K.ell},
                   {"probed_m", K.probed_m}, {"certified_m", K.certified_m}};
  auto roots = nlohmann::json::array();
  for (int r : K.roots()) roots.push_back(r + 1);
  j["roots"] = roots;
  auto edges = nlohmann::json::array();
  for (int u = 0; u < K.N; ++u)
    for (int v : K.adj[u])
      if (u < v) edges.push_back({u + 1, v + 1});
  j["edges"] = edges;
  return j;
}

std::string connector_edge_list(const ConnectorGraph& K) {
  std::ostringstream os;
  for (int u = 0; u < K.N; ++u)
    for (int v : K.adj[u])
      if (u < v) os << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

}  // namespace latdec
