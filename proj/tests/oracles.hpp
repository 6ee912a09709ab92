#pragma once

// Slow, obviously-correct reference computations. None of them call the
// search code they are compared against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "latdec/core.hpp"
#include "latdec/links.hpp"
#include "latdec/rng.hpp"

namespace oracle {

using latdec::LatinSquare;
using latdec::ProperColoring;

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Every column permutation, kept when its symbols are distinct.
inline std::vector<std::vector<int>> transversal_permutations(const LatinSquare& ls) {
  const int n = ls.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    std::vector<char> sym(n, 0);
    bool ok = true;
    for (int r = 0; r < n && ok; ++r) ok = !sym[ls.at(r, perm[r])]++;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::uint64_t transversal_count(const LatinSquare& ls) { return transversal_permutations(ls).size(); }

/// Picks transversals covering the lowest uncovered row-0 column first.
inline bool decomposable(const LatinSquare& ls) {
  const int n = ls.order();
  const auto ts = transversal_permutations(ls);
  std::vector<char> covered(n * n, 0);
  std::function<bool(int)> go = [&](int c0) -> bool {
    if (c0 == n) return true;
    for (const auto& t : ts) {
      if (t[0] != c0) continue;
      bool free = true;
      for (int r = 0; r < n && free; ++r) free = !covered[r * n + t[r]];
      if (!free) continue;
      for (int r = 0; r < n; ++r) covered[r * n + t[r]] = 1;
      if (go(c0 + 1)) return true;
      for (int r = 0; r < n; ++r) covered[r * n + t[r]] = 0;
    }
    return false;
  };
  return go(0);
}

/// Squares built row by row from whole permutations. With `reduced`, row 0 is
/// the identity and row r starts with r.
inline void for_each_square(int n, bool reduced, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> grid(n * n);
  std::vector<std::vector<char>> col_used(n, std::vector<char>(n, 0));
  std::function<void(int)> go = [&](int r) {
    if (r == n) {
      visit(grid);
      return;
    }
    for (const auto& q : perms) {
      if (reduced && q[0] != r) continue;
      if (reduced && r == 0 && q != perms.front()) continue;
      bool ok = true;
      for (int c = 0; c < n && ok; ++c) ok = !col_used[c][q[c]];
      if (!ok) continue;
      for (int c = 0; c < n; ++c) {
        col_used[c][q[c]] = 1;
        grid[r * n + c] = q[c];
      }
      go(r + 1);
      for (int c = 0; c < n; ++c) col_used[c][q[c]] = 0;
    }
  };
  go(0);
}

inline std::uint64_t count_squares(int n, bool reduced) {
  std::uint64_t k = 0;
  for_each_square(n, reduced, [&](const std::vector<int>&) { ++k; });
  return k;
}

/// All injections fixing start/end, checked edge by edge at the leaves.
inline std::uint64_t link_count(const ProperColoring& host, int u, int v, const latdec::Pattern& pat) {
  const int n = host.order(), V = pat.num_vertices;
  if (u == v) return 0;
  std::vector<int> psi(V, -1);
  std::vector<char> used(2 * n, 0);
  psi[pat.start] = u;
  psi[pat.end] = v;
  used[u] = used[v] = 1;
  std::uint64_t count = 0;
  auto leaf = [&] {
    int max_cls = 0;
    for (const auto& e : pat.edges) max_cls = std::max(max_cls, e.cls);
    std::vector<int> colour(max_cls + 1, -1);
    for (const auto& e : pat.edges) {
      const int a = psi[e.u], b = psi[e.v];
      if ((a < n) == (b < n)) return;
      const int c = a < n ? host.color(a, b - n) : host.color(b, a - n);
      if (colour[e.cls] == -1) colour[e.cls] = c;
      else if (colour[e.cls] != c) return;
    }
    for (int x = 1; x <= max_cls; ++x)
      for (int y = x + 1; y <= max_cls; ++y)
        if (colour[x] >= 0 && colour[x] == colour[y]) return;
    ++count;
  };
  std::function<void(int)> go = [&](int w) {
    if (w == V) {
      leaf();
      return;
    }
    if (w == pat.start || w == pat.end) {
      go(w + 1);
      return;
    }
    for (int h = 0; h < 2 * n; ++h) {
      if (used[h]) continue;
      used[h] = 1;
      psi[w] = h;
      go(w + 1);
      used[h] = 0;
    }
  };
  go(0);
  return count;
}

/// All simple paths of length len from x to y, as vertex sequences.
inline std::vector<std::vector<int>> paths(const ProperColoring& host, int len, int x, int y) {
  const int n = host.order();
  std::vector<std::vector<int>> out;
  std::vector<int> cur{x};
  std::function<void()> go = [&] {
    if (static_cast<int>(cur.size()) == len + 1) {
      if (cur.back() == y) out.push_back(cur);
      return;
    }
    for (int w = 0; w < 2 * n; ++w) {
      if ((w < n) == (cur.back() < n)) continue;
      if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      cur.push_back(w);
      go();
      cur.pop_back();
    }
  };
  go();
  return out;
}

inline int colour_between(const ProperColoring& host, int a, int b) {
  const int n = host.order();
  return a < n ? host.color(a, b - n) : host.color(b, a - n);
}

inline std::uint64_t path_pairs(const ProperColoring& host, int len, int x1, int y1, int x2, int y2) {
  std::uint64_t count = 0;
  const auto p1s = paths(host, len, x1, y1), p2s = paths(host, len, x2, y2);
  for (const auto& p : p1s) {
    for (const auto& q : p2s) {
      bool ok = true;
      for (int a : p)
        if (std::find(q.begin(), q.end(), a) != q.end()) ok = false;
      for (int k = 0; k < len && ok; ++k)
        ok = colour_between(host, p[k], p[k + 1]) == colour_between(host, q[k], q[k + 1]);
      if (ok) ++count;
    }
  }
  return count;
}

/// Closed walks u w1 w2 w3 u with colours a b a b, a != b.
inline std::uint64_t closed_walks(const ProperColoring& host, int u) {
  const int n = host.order();
  std::uint64_t count = 0;
  const int other = u < n ? n : 0, same = u < n ? 0 : n;
  for (int w1 = other; w1 < other + n; ++w1)
    for (int w2 = same; w2 < same + n; ++w2)
      for (int w3 = other; w3 < other + n; ++w3) {
        const int a = colour_between(host, u, w1), b = colour_between(host, w1, w2);
        if (a == b) continue;
        if (colour_between(host, w2, w3) == a && colour_between(host, w3, u) == b) ++count;
      }
  return count;
}

/// A random pattern on 2..7 vertices with 1..max_edges edges and classes in [1, 3].
/// Not necessarily connected or bipartite; those cases should simply count zero.
inline latdec::Pattern random_pattern(latdec::SeededRng& rng, int max_edges = 6) {
  latdec::Pattern p;
  p.num_vertices = 2 + rng.below(6);
  const int want = 1 + rng.below(max_edges);
  std::set<std::pair<int, int>> seen;
  for (int tries = 0; tries < 50 && static_cast<int>(p.edges.size()) < want; ++tries) {
    int a = rng.below(p.num_vertices), b = rng.below(p.num_vertices);
    if (a == b) continue;
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
    p.edges.push_back({a, b, 1 + rng.below(3)});
  }
  p.start = rng.below(p.num_vertices);
  do p.end = rng.below(p.num_vertices);
  while (p.end == p.start);
  return p;
}

}  // namespace oracle
