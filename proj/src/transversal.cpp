#include "latdec/transversal.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "transversal_kernels.hpp"

namespace latdec {

using detail::Mask;
using detail::full_mask;

namespace {

void check_mask_order(const LatinSquare& ls) {
  if (ls.order() > kMaxMaskOrder) {
    throw SearchRefused("order " + std::to_string(ls.order()) + " exceeds the bitmask limit of " +
                        std::to_string(kMaxMaskOrder));
  }
}

struct TransversalWalker {
  const LatinSquare& ls;
  const std::function<bool(std::span<const int>)>& visit;
  std::vector<int> cols;

  bool run(int row, Mask free_cols, Mask free_syms) {
    const int n = ls.order();
    if (row == n) return visit(cols);
    const auto cells = ls.row(row);
    for (Mask m = free_cols; m; m &= m - 1) {
      const int c = std::countr_zero(m);
      const Mask sym = Mask{1} << cells[c];
      if (!(free_syms & sym)) continue;
      cols[row] = c;
      if (!run(row + 1, free_cols & ~(Mask{1} << c), free_syms & ~sym)) return false;
    }
    return true;
  }
};

Transversal from_cols(std::span<const int> cols) {
  Transversal t;
  t.cells.reserve(cols.size());
  for (int r = 0; r < static_cast<int>(cols.size()); ++r) t.cells.push_back({r, cols[r]});
  return t;
}

}  // namespace

void for_each_transversal(const LatinSquare& ls,
                          const std::function<bool(std::span<const int>)>& visit) {
  check_mask_order(ls);
  TransversalWalker w{ls, visit, std::vector<int>(ls.order())};
  w.run(0, full_mask(ls.order()), full_mask(ls.order()));
}

std::vector<Transversal> enumerate_transversals(const LatinSquare& ls,
                                                std::optional<std::size_t> limit) {
  std::vector<Transversal> out;
  if (limit && *limit == 0) return out;
  for_each_transversal(ls, [&](std::span<const int> cols) {
    out.push_back(from_cols(cols));
    return !limit || out.size() < *limit;
  });
  return out;
}

std::uint64_t count_transversals_serial(const LatinSquare& ls) {
  check_mask_order(ls);
  return detail::count_from(ls, 0, full_mask(ls.order()), full_mask(ls.order()));
}

std::uint64_t count_transversals(const LatinSquare& ls) {
  return ls.order() >= 8 ? count_transversals_parallel(ls) : count_transversals_serial(ls);
}

// ---------------------------------------------------------------------------

namespace {

struct PartialSearch {
  const LatinSquare& ls;
  std::vector<int> cols;  // -1 = row skipped
  std::vector<int> best_cols;
  int best = -1;

  void run(int row, int size, Mask free_cols, Mask free_syms) {
    const int n = ls.order();
    if (best == n) return;
    const int bound = size + std::min({n - row, std::popcount(free_cols), std::popcount(free_syms)});
    if (bound <= best) return;
    if (row == n) {
      best = size;
      best_cols = cols;
      return;
    }
    const auto cells = ls.row(row);
    for (Mask m = free_cols; m; m &= m - 1) {
      const int c = std::countr_zero(m);
      const Mask sym = Mask{1} << cells[c];
      if (!(free_syms & sym)) continue;
      cols[row] = c;
      run(row + 1, size + 1, free_cols & ~(Mask{1} << c), free_syms & ~sym);
    }
    cols[row] = -1;
    run(row + 1, size, free_cols, free_syms);
  }
};

}  // namespace

PartialTransversal max_partial_transversal(const LatinSquare& ls, int max_order) {
  if (ls.order() > max_order) {
    throw SearchRefused("exact search refused: order " + std::to_string(ls.order()) +
                        " exceeds the exact-search bound " + std::to_string(max_order));
  }
  check_mask_order(ls);
  const int n = ls.order();
  PartialSearch s{ls, std::vector<int>(n, -1), {}, -1};
  s.run(0, 0, full_mask(n), full_mask(n));
  PartialTransversal out;
  for (int r = 0; r < n; ++r)
    if (s.best_cols[r] >= 0) out.cells.push_back({r, s.best_cols[r]});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Lazy search: the k-th part is the transversal through cell (0, k), built
// on the fly from the still uncovered cells.
struct LazyDecomposer {
  const LatinSquare& ls;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::vector<Mask> covered;  // per row, columns already used by earlier parts
  std::vector<std::vector<int>> parts;
  std::vector<int> cols;

  enum class Step { Continue, Found, Abort };

  Step extend(int k, int row, Mask free_cols, Mask free_syms) {
    const int n = ls.order();
    if (row == n) {
      if (++nodes > budget) {
        out_of_budget = true;
        return Step::Abort;
      }
      for (int r = 0; r < n; ++r) covered[r] |= Mask{1} << cols[r];
      parts.push_back(cols);
      const Step s = next_part(k + 1);
      if (s != Step::Continue) return s;
      parts.pop_back();
      for (int r = 0; r < n; ++r) covered[r] &= ~(Mask{1} << cols[r]);
      return Step::Continue;
    }
    const auto cells = ls.row(row);
    for (Mask m = free_cols & ~covered[row]; m; m &= m - 1) {
      const int c = std::countr_zero(m);
      const Mask sym = Mask{1} << cells[c];
      if (!(free_syms & sym)) continue;
      cols[row] = c;
      const Step s = extend(k, row + 1, free_cols & ~(Mask{1} << c), free_syms & ~sym);
      if (s != Step::Continue) return s;
    }
    return Step::Continue;
  }

  Step next_part(int k) {
    const int n = ls.order();
    if (k == n) return Step::Found;
    cols[0] = k;
    return extend(k, 1, full_mask(n) & ~(Mask{1} << k), full_mask(n) & ~(Mask{1} << ls.at(0, k)));
  }
};

Decomposition parts_from_cols(const std::vector<std::vector<int>>& parts) {
  Decomposition dec;
  for (const auto& cols : parts) dec.parts.push_back(from_cols(cols));
  std::sort(dec.parts.begin(), dec.parts.end(),
            [](const Transversal& a, const Transversal& b) { return a.cells[0].col < b.cells[0].col; });
  return dec;
}

}  // namespace

DecomposeResult decompose(const LatinSquare& ls, const DecomposeOptions& opts) {
  check_mask_order(ls);
  const int n = ls.order();
  DecomposeResult res;

  std::vector<std::vector<int>> candidates;
  bool too_many = false;
  for_each_transversal(ls, [&](std::span<const int> cols) {
    if (candidates.size() >= opts.lazy_threshold) {
      too_many = true;
      return false;
    }
    candidates.emplace_back(cols.begin(), cols.end());
    return true;
  });

  if (too_many) {
    candidates.clear();
    candidates.shrink_to_fit();
    res.lazy = true;
    LazyDecomposer lazy{ls, opts.node_budget, 0, false, std::vector<Mask>(n, 0), {},
                        std::vector<int>(n)};
    const auto step = lazy.next_part(0);
    res.nodes = lazy.nodes;
    if (step == LazyDecomposer::Step::Found) {
      res.status = SearchStatus::Found;
      res.decomposition = parts_from_cols(lazy.parts);
    } else {
      res.status = lazy.out_of_budget ? SearchStatus::Undecided : SearchStatus::None;
    }
    return res;
  }

  res.candidates = candidates.size();
  if (static_cast<int>(candidates.size()) < n) {
    res.status = SearchStatus::None;
    return res;
  }
  ExactCover problem(n * n);
  std::vector<int> items(n);
  for (const auto& cols : candidates) {
    for (int r = 0; r < n; ++r) items[r] = r * n + cols[r];
    problem.add_option(items);
  }
  auto solved = problem.solve(opts.node_budget);
  res.nodes = solved.nodes;
  res.status = solved.status;
  if (solved.status == SearchStatus::Found) {
    std::vector<std::vector<int>> parts;
    for (int opt : solved.options) parts.push_back(candidates[opt]);
    res.decomposition = parts_from_cols(parts);
  }
  return res;
}

}  // namespace latdec
