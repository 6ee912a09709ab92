#pragma once

// Shared test inputs: small named squares and random switcher families.

#include <algorithm>
#include <optional>
#include <vector>

#include "latdec/core.hpp"
#include "latdec/rainbow.hpp"
#include "latdec/rng.hpp"
#include "latdec/sampler.hpp"

namespace fixture {

using namespace latdec;

/// Cayley table of Z2 x Z2.
inline LatinSquare klein4() {
  std::vector<int> cells(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) cells[r * 4 + c] = r ^ c;
  return LatinSquare::from_flat(4, cells);
}

/// Order-5 square with a hand-checked length-6 switcher between two
/// three-edge rainbow matchings: path b1 a1 b2 a2 b3 a3 b4.
inline LatinSquare switcher_square() {
  return LatinSquare::from_grid(5, {{0, 1, 2, 3, 4},
                                    {1, 2, 0, 4, 3},
                                    {3, 4, 1, 2, 0},
                                    {2, 3, 4, 0, 1},
                                    {4, 0, 3, 1, 2}});
}

inline NearMatchingFamily switcher_family() {
  return NearMatchingFamily::make(to_coloring(switcher_square()),
                                  {{{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 2}, {2, 3}}});
}

struct SwitchCase {
  NearMatchingFamily fam;
  int i = 0, j = 1;
  Vertex x = 0, y = 0;
  std::vector<Vertex> planted;  // the path the family was built around
};

namespace detail {

inline Edge edge_of(Vertex u, Vertex v, int n) { return u < n ? Edge{u, v - n} : Edge{v, u - n}; }

// First (in random neighbour order) length-2s path from x whose halves are
// rainbow with equal colour sets.
inline bool plant(const ProperColoring& base, int s, std::vector<Vertex>& path, SeededRng& rng) {
  const int n = base.order();
  if (static_cast<int>(path.size()) == 2 * s + 1) {
    std::vector<int> odd, even;
    for (int k = 0; k < 2 * s; ++k) {
      const Edge e = edge_of(path[k], path[k + 1], n);
      (k % 2 == 0 ? odd : even).push_back(base.color(e));
    }
    std::sort(odd.begin(), odd.end());
    std::sort(even.begin(), even.end());
    return std::adjacent_find(odd.begin(), odd.end()) == odd.end() &&
           std::adjacent_find(even.begin(), even.end()) == even.end() && odd == even;
  }
  const Vertex last = path.back();
  std::vector<Vertex> next;
  for (int k = 0; k < n; ++k) next.push_back(last < n ? n + k : k);
  std::shuffle(next.begin(), next.end(), rng.engine());
  for (Vertex w : next) {
    if (std::find(path.begin(), path.end(), w) != path.end()) continue;
    path.push_back(w);
    if (plant(base, s, path, rng)) return true;
    path.pop_back();
  }
  return false;
}

// Grows `m` greedily into a larger rainbow matching, skipping `avoid`
// vertices and edges already owned elsewhere.
inline void extend(const ProperColoring& base, std::vector<Edge>& m, const std::vector<Vertex>& avoid,
                   const std::vector<std::vector<Edge>>& others, SeededRng& rng) {
  const int n = base.order();
  std::vector<char> used_v(2 * n, 0), used_c(n, 0);
  for (Vertex v : avoid) used_v[v] = 1;
  for (const Edge& e : m) {
    used_v[e.a] = used_v[n + e.b] = 1;
    used_c[base.color(e)] = 1;
  }
  std::vector<Edge> all;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) all.push_back({a, b});
  std::shuffle(all.begin(), all.end(), rng.engine());
  for (const Edge& e : all) {
    if (used_v[e.a] || used_v[n + e.b] || used_c[base.color(e)] || rng.coin()) continue;
    bool taken = false;
    for (const auto& o : others) taken = taken || std::find(o.begin(), o.end(), e) != o.end();
    if (taken) continue;
    m.push_back(e);
    used_v[e.a] = used_v[n + e.b] = 1;
    used_c[base.color(e)] = 1;
  }
}

}  // namespace detail

/// A random family of three near-matchings on a sampled order-n square,
/// built around a planted switcher of length 2s from x to y in (i, j).
inline SwitchCase random_switch_case(int n, int s, SeededRng& rng) {
  for (;;) {
    const auto base = to_coloring(sample_uniform(n, rng, 20ULL * n * n * n));
    std::vector<Vertex> path{rng.below(2 * n)};
    if (!detail::plant(base, s, path, rng)) continue;
    std::vector<Edge> mi, mj, mk;
    for (int k = 0; k < 2 * s; ++k) (k % 2 == 0 ? mi : mj).push_back(detail::edge_of(path[k], path[k + 1], n));
    detail::extend(base, mi, path, {mj}, rng);
    detail::extend(base, mj, path, {mi}, rng);
    detail::extend(base, mk, {}, {mi, mj}, rng);
    std::vector<std::vector<Edge>> ms(3);
    std::vector<int> slot{0, 1, 2};
    std::shuffle(slot.begin(), slot.end(), rng.engine());
    ms[slot[0]] = mi;
    ms[slot[1]] = mj;
    ms[slot[2]] = mk;
    return SwitchCase{NearMatchingFamily::make(base, ms), slot[0], slot[1], path.front(), path.back(), path};
  }
}

}  // namespace fixture
