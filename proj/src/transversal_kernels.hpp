#pragma once

// Bitmask backtracking kernels shared by the serial and OpenMP drivers.

#include <bit>
#include <cstdint>
#include <vector>

#include "latdec/core.hpp"

namespace latdec::detail {

using Mask = std::uint64_t;

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Counts completions of a partial transversal covering rows [0, row).
inline std::uint64_t count_from(const LatinSquare& ls, int row, Mask free_cols, Mask free_syms) {
  const int n = ls.order();
  if (row == n) return 1;
  const auto cells = ls.row(row);
  std::uint64_t total = 0;
  for (Mask m = free_cols; m; m &= m - 1) {
    const int c = std::countr_zero(m);
    const Mask sym = Mask{1} << cells[c];
    if (free_syms & sym) total += count_from(ls, row + 1, free_cols & ~(Mask{1} << c), free_syms & ~sym);
  }
  return total;
}

}  // namespace latdec::detail
