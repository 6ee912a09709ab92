#include "latdec/links.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <array>
#include <limits>
#include <tuple>
#include <set>

#include "latdec/sampler.hpp"

#ifdef LATDEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace latdec {

void Pattern::validate() const {
  if (num_vertices < 2) throw InvalidInput("pattern needs at least two vertices");
  if (start < 0 || start >= num_vertices || end < 0 || end >= num_vertices)
    throw InvalidInput("pattern start/end out of range");
  if (start == end) throw InvalidInput("pattern start and end must differ");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
      throw InvalidInput("pattern edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("pattern has a self-loop");
    if (e.cls < 1) throw InvalidInput("pattern colour classes must be positive");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw InvalidInput("pattern has a repeated edge");
  }
}

Pattern make_repeat_pattern(int k) {
  if (k < 1) throw InvalidInput("repeat pattern needs k >= 1");
  Pattern p;
  p.num_vertices = 2 * k + 1;
  p.start = 0;
  p.end = 2 * k;
  for (int t = 1; t <= 2 * k; ++t) p.edges.push_back({t - 1, t, (t - 1) % k + 1});
  return p;
}

void SaturatingCount::add(std::uint64_t x) {
  if (value > std::numeric_limits<std::uint64_t>::max() - x) {
    value = std::numeric_limits<std::uint64_t>::max();
    overflow = true;
  } else {
    value += x;
  }
}

std::optional<std::string> check_link(const ProperColoring& host, const Pattern& pat,
                                      const Link& link, Vertex u, Vertex v) {
  const int n = host.order();
  if (static_cast<int>(link.embedding.size()) != pat.num_vertices) return "embedding has the wrong size";
  if (link.embedding[pat.start] != u || link.embedding[pat.end] != v) return "endpoints not mapped to (u, v)";
  std::set<Vertex> image;
  for (Vertex h : link.embedding) {
    if (h < 0 || h >= 2 * n) return "image vertex out of range";
    if (!image.insert(h).second) return "embedding not injective";
  }
  std::vector<std::pair<int, int>> class_color;  // (class, colour)
  for (const auto& e : pat.edges) {
    const Vertex a = link.embedding[e.u], b = link.embedding[e.v];
    if (same_side(a, b, n)) return "pattern edge mapped inside one side";
    class_color.emplace_back(e.cls, host.color_between(a, b));
  }
  std::sort(class_color.begin(), class_color.end());
  class_color.erase(std::unique(class_color.begin(), class_color.end()), class_color.end());
  std::set<int> classes, colors;
  for (const auto& [cls, col] : class_color) {
    if (!classes.insert(cls).second) return "class edges carry different colours";
    if (!colors.insert(col).second) return "two classes share a colour";
  }
  return std::nullopt;
}

namespace {

struct BackEdge {
  int to;  // position of the earlier pattern vertex
  int cls;
};

// Static part of a link search: elimination order and parity feasibility.
struct LinkPlan {
  std::vector<int> order;                     // pattern vertices; order[0]=start, order[1]=end
  std::vector<std::vector<BackEdge>> back;    // per position
  int num_classes = 0;
  bool feasible = true;   // H bipartite
  int start_end_parity = -1;  // -1: different components, 0: same side, 1: opposite sides
};

LinkPlan plan_links(const Pattern& pat) {
  pat.validate();
  const int V = pat.num_vertices;
  std::vector<std::vector<std::pair<int, int>>> adj(V);
  LinkPlan plan;
  for (const auto& e : pat.edges) {
    adj[e.u].emplace_back(e.v, e.cls);
    adj[e.v].emplace_back(e.u, e.cls);
    plan.num_classes = std::max(plan.num_classes, e.cls + 1);
  }
  // 2-colour each component.
  std::vector<int> colour(V, -1), comp(V, -1);
  for (int s = 0; s < V; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    comp[s] = s;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (auto [y, cls] : adj[x]) {
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          comp[y] = s;
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          plan.feasible = false;
        }
      }
    }
  }
  if (comp[pat.start] == comp[pat.end]) plan.start_end_parity = colour[pat.start] != colour[pat.end];

  std::vector<int> position(V, -1);
  std::vector<char> class_seen(plan.num_classes, 0);
  auto place = [&](int w) {
    position[w] = static_cast<int>(plan.order.size());
    plan.order.push_back(w);
    auto& b = plan.back.emplace_back();
    for (auto [y, cls] : adj[w])
      if (position[y] >= 0 && position[y] != position[w]) b.push_back({position[y], cls});
    // forced edges first: their class was fixed by an earlier placement
    std::stable_sort(b.begin(), b.end(), [&](const BackEdge& x, const BackEdge& y) {
      return class_seen[x.cls] > class_seen[y.cls];
    });
    for (auto [y, cls] : adj[w])
      if (position[y] >= 0) class_seen[cls] = 1;
  };
  place(pat.start);
  place(pat.end);
  while (static_cast<int>(plan.order.size()) < V) {
    int best = -1;
    std::tuple<int, int> best_score{-1, -1};
    for (int w = 0; w < V; ++w) {
      if (position[w] >= 0) continue;
      int placed = 0, forced = 0;
      for (auto [y, cls] : adj[w]) {
        if (position[y] < 0) continue;
        ++placed;
        if (class_seen[cls]) forced = 1;
      }
      const std::tuple<int, int> score{forced, placed};
      if (score > best_score) {
        best_score = score;
        best = w;
      }
    }
    place(best);
  }
  return plan;
}

struct LinkSearch {
  const ProperColoring& host;
  const LinkPlan& plan;
  int n;
  std::vector<Vertex> psi;         // by position
  std::vector<char> used;          // host vertices
  std::vector<int> class_color;    // -1 if unassigned
  std::vector<int> color_owner;    // class or -1
  std::vector<int> assigned;       // undo log of classes
  const std::function<bool(std::span<const Vertex>)>* visit = nullptr;
  std::vector<Vertex> by_pattern;  // scratch for visit
  SaturatingCount count;

  // Checks all back edges of position p for host vertex h, assigning classes.
  // Returns false (after rolling back its own assignments) on conflict.
  bool accept(int p, Vertex h) {
    const std::size_t mark = assigned.size();
    for (const BackEdge& e : plan.back[p]) {
      const Vertex other = psi[e.to];
      if (same_side(h, other, n)) return rollback(mark);
      const int c = host.color_between(h, other);
      if (class_color[e.cls] >= 0) {
        if (class_color[e.cls] != c) return rollback(mark);
      } else {
        if (color_owner[c] >= 0) return rollback(mark);
        class_color[e.cls] = c;
        color_owner[c] = e.cls;
        assigned.push_back(e.cls);
      }
    }
    return true;
  }

  bool rollback(std::size_t mark) {
    while (assigned.size() > mark) {
      const int cls = assigned.back();
      assigned.pop_back();
      color_owner[class_color[cls]] = -1;
      class_color[cls] = -1;
    }
    return false;
  }

  // Returns false to stop.
  bool run(int p) {
    const int V = static_cast<int>(plan.order.size());
    if (p == V) {
      if (visit) {
        for (int q = 0; q < V; ++q) by_pattern[plan.order[q]] = psi[q];
        return (*visit)(by_pattern);
      }
      count.add(1);
      return true;
    }
    const std::size_t mark = assigned.size();
    auto try_vertex = [&](Vertex h) {
      if (used[h] || !accept(p, h)) return true;
      used[h] = 1;
      psi[p] = h;
      const bool go = run(p + 1);
      used[h] = 0;
      rollback(mark);
      return go;
    };
    const auto& back = plan.back[p];
    if (!back.empty()) {
      const BackEdge& first = back.front();
      const Vertex anchor = psi[first.to];
      if (class_color[first.cls] >= 0) return try_vertex(host.neighbour_with_color(anchor, class_color[first.cls]));
      const Vertex lo = anchor < n ? n : 0;
      for (Vertex h = lo; h < lo + n; ++h)
        if (!try_vertex(h)) return false;
      return true;
    }
    for (Vertex h = 0; h < 2 * n; ++h)
      if (!try_vertex(h)) return false;
    return true;
  }
};

template <class Setup>
SaturatingCount run_links(const ProperColoring& host, Vertex u, Vertex v, const Pattern& pat, Setup&& setup) {
  const int n = host.order();
  if (u < 0 || u >= 2 * n || v < 0 || v >= 2 * n) throw InvalidInput("endpoint out of range");
  const LinkPlan plan = plan_links(pat);
  if (u == v || !plan.feasible) return {};
  if (plan.start_end_parity >= 0 && plan.start_end_parity != (same_side(u, v, n) ? 0 : 1)) return {};
  LinkSearch s{host, plan, n, std::vector<Vertex>(plan.order.size(), -1), std::vector<char>(2 * n, 0),
               std::vector<int>(plan.num_classes, -1), std::vector<int>(n, -1), {}, nullptr,
               std::vector<Vertex>(plan.order.size(), -1), {}};
  setup(s);
  s.psi[0] = u;
  s.used[u] = 1;
  if (!s.accept(1, v)) return {};
  s.psi[1] = v;
  s.used[v] = 1;
  s.run(2);
  return s.count;
}

}  // namespace

void for_each_link(const ProperColoring& host, Vertex u, Vertex v, const Pattern& pat,
                   const std::function<bool(std::span<const Vertex>)>& visit) {
  run_links(host, u, v, pat, [&](LinkSearch& s) { s.visit = &visit; });
}

std::vector<Link> enumerate_links(const ProperColoring& host, Vertex u, Vertex v,
                                  const Pattern& pat, std::optional<std::size_t> limit) {
  std::vector<Link> out;
  if (limit && *limit == 0) return out;
  for_each_link(host, u, v, pat, [&](std::span<const Vertex> emb) {
    out.push_back(Link{{emb.begin(), emb.end()}});
    return !limit || out.size() < *limit;
  });
  return out;
}

SaturatingCount count_links(const ProperColoring& host, Vertex u, Vertex v, const Pattern& pat) {
  return run_links(host, u, v, pat, [](LinkSearch&) {});
}

std::uint64_t closed_alternating_walks(const ProperColoring& host, Vertex u) {
  const int n = host.order();
  const Vertex other_lo = u < n ? n : 0;
  const Vertex same_lo = u < n ? 0 : n;
  std::uint64_t closed = 0;
  for (Vertex w1 = other_lo; w1 < other_lo + n; ++w1) {
    const int a = host.color_between(u, w1);
    for (Vertex w2 = same_lo; w2 < same_lo + n; ++w2) {
      if (w2 == u) continue;
      const int b = host.color_between(w1, w2);
      const Vertex w3 = host.neighbour_with_color(w2, a);
      if (host.neighbour_with_color(w3, b) == u) ++closed;
    }
  }
  return closed;
}

// ---------------------------------------------------------------------------

CensusResult census_path_pairs(const ProperColoring& host, const PathPairQuery& q) {
  const auto t0 = std::chrono::steady_clock::now();
  CensusResult res{q, {}, 0.0};
  const int n = host.order();
  const int len = q.length;
  const std::array<Vertex, 4> ends{q.x1, q.y1, q.x2, q.y2};
  for (Vertex e : ends)
    if (e < 0 || e >= 2 * n) throw InvalidInput("census endpoint out of range");
  bool valid = len >= 1 && len % 2 == 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) valid = valid && ends[a] != ends[b];
  valid = valid && !same_side(q.x1, q.y1, n) && !same_side(q.x2, q.y2, n);
  if (valid) {
    std::vector<char> on_p1(2 * n, 0), on_p2(2 * n, 0);
    std::vector<Vertex> p1{q.x1};
    std::vector<int> colours;
    on_p1[q.x1] = 1;
    auto walk_second = [&]() -> bool {
      // P2 is forced by the colour sequence.
      Vertex cur = q.x2;
      if (on_p1[cur]) return false;
      std::vector<Vertex> touched{cur};
      on_p2[cur] = 1;
      bool ok = true;
      for (int c : colours) {
        cur = host.neighbour_with_color(cur, c);
        if (on_p1[cur] || on_p2[cur]) {
          ok = false;
          break;
        }
        on_p2[cur] = 1;
        touched.push_back(cur);
      }
      ok = ok && cur == q.y2;
      for (Vertex t : touched) on_p2[t] = 0;
      return ok;
    };
    auto dfs = [&](auto&& self, int step) -> void {
      const Vertex cur = p1.back();
      if (step == len - 1) {
        if (on_p1[q.y1]) return;
        colours.push_back(host.color_between(cur, q.y1));
        on_p1[q.y1] = 1;
        if (walk_second()) res.count.add(1);
        on_p1[q.y1] = 0;
        colours.pop_back();
        return;
      }
      const Vertex lo = cur < n ? n : 0;
      for (Vertex w = lo; w < lo + n; ++w) {
        if (on_p1[w] || w == q.y1) continue;
        on_p1[w] = 1;
        p1.push_back(w);
        colours.push_back(host.color_between(cur, w));
        self(self, step + 1);
        colours.pop_back();
        p1.pop_back();
        on_p1[w] = 0;
      }
    };
    dfs(dfs, 0);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------

void ColoredSubgraph::validate(int n) const {
  std::set<std::pair<int, int>> cells, row_col, col_col;
  for (const auto& [cell, c] : edges) {
    if (cell.row < 0 || cell.row >= n || cell.col < 0 || cell.col >= n || c < 0 || c >= n)
      throw InvalidInput("subgraph edge out of range for order " + std::to_string(n));
    if (!cells.insert({cell.row, cell.col}).second) throw InvalidInput("subgraph lists a cell twice");
    if (!row_col.insert({cell.row, c}).second || !col_col.insert({cell.col, c}).second)
      throw InvalidInput("subgraph is not properly coloured");
  }
}

bool ColoredSubgraph::contained_in(const LatinSquare& ls) const {
  return std::all_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return ls.at(e.first) == e.second; });
}

double ProbeResult::standard_error() const {
  if (exact || trials == 0) return 0.0;
  const double p = estimate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ProbeResult probe_exact(const ColoredSubgraph& h, int n) {
  h.validate(n);
  ProbeResult r{n, 0, 0, true};
  for_each_latin_square(n, [&](const LatinSquare& ls) {
    ++r.trials;
    if (h.contained_in(ls)) ++r.hits;
    return true;
  });
  return r;
}

ProbeResult probe_sampled(const ColoredSubgraph& h, int n, std::uint64_t trials,
                          const SeededRng& rng, std::uint64_t burnin, int workers) {
  h.validate(n);
  std::vector<char> hit(trials, 0);
  const auto count = static_cast<long long>(trials);
#ifdef LATDEC_HAVE_OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#else
  (void)workers;
#endif
  for (long long t = 0; t < count; ++t) {
    SeededRng stream = rng.derive(static_cast<std::uint64_t>(t));
    hit[t] = h.contained_in(sample_uniform(n, stream, burnin)) ? 1 : 0;
  }
  ProbeResult r{n, trials, 0, false};
  for (char x : hit) r.hits += x;
  return r;
}

ProbeResult subgraph_probability_probe(const ColoredSubgraph& h, int n, std::uint64_t trials,
                                       const SeededRng& rng, std::uint64_t burnin, int workers) {
  if (n == 4) return probe_exact(h, n);
  return probe_sampled(h, n, trials, rng, burnin, workers);
}

// ---------------------------------------------------------------------------

nlohmann::json pattern_to_json(const Pattern& p) {
  nlohmann::json j;
  j["vertices"] = p.num_vertices;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : p.edges) edges.push_back({e.u + 1, e.v + 1, e.cls});
  j["start"] = p.start + 1;
  j["end"] = p.end + 1;
  return j;
}

Pattern pattern_from_json(const nlohmann::json& j) {
  try {
    Pattern p;
    p.num_vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges"))
      p.edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1, e.at(2).get<int>()});
    p.start = j.at("start").get<int>() - 1;
    p.end = j.at("end").get<int>() - 1;
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed pattern JSON: ") + e.what());
  }
}

ColoredSubgraph subgraph_from_json(const nlohmann::json& j) {
  try {
    ColoredSubgraph h;
    for (const auto& e : j.at("edges"))
      h.edges.push_back({Cell{e.at(0).get<int>() - 1, e.at(1).get<int>() - 1}, e.at(2).get<int>() - 1});
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed subgraph JSON: ") + e.what());
  }
}

}  // namespace latdec
