#pragma once

// Transversal enumeration and counting, maximum partial transversals, and
// decomposition into disjoint transversals by exact cover.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "latdec/core.hpp"
#include "latdec/exact_cover.hpp"

namespace latdec {

/// Largest order supported by the bitmask searches.
inline constexpr int kMaxMaskOrder = 64;

/// An exact search was asked for above its configured order bound.
class SearchRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls `visit(cols)` for every transversal in canonical order (lexicographic
/// in the column chosen for rows 0..n-1); cols[r] is the column used in row r.
/// Returning false from `visit` stops the enumeration.
void for_each_transversal(const LatinSquare& ls,
                          const std::function<bool(std::span<const int>)>& visit);

std::vector<Transversal> enumerate_transversals(const LatinSquare& ls,
                                                std::optional<std::size_t> limit = std::nullopt);

/// Serial reference kernel.
std::uint64_t count_transversals_serial(const LatinSquare& ls);
/// OpenMP kernel: splits the search on the choices for the first two rows.
/// workers <= 0 means the runtime default. Falls back to serial without OpenMP.
std::uint64_t count_transversals_parallel(const LatinSquare& ls, int workers = 0);
/// Same value as count_transversals_serial; picks the parallel kernel for n >= 8.
std::uint64_t count_transversals(const LatinSquare& ls);

/// Exact maximum partial transversal by branch and bound. Throws
/// SearchRefused if n > max_order.
PartialTransversal max_partial_transversal(const LatinSquare& ls, int max_order = 9);

struct DecomposeOptions {
  std::uint64_t node_budget = 100'000'000;
  /// Above this many transversals the candidates are generated lazily.
  std::uint64_t lazy_threshold = 1'000'000;
};

struct DecomposeResult {
  SearchStatus status = SearchStatus::None;
  std::optional<Decomposition> decomposition;
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;  // transversals materialised (0 in lazy mode)
  bool lazy = false;
};

/// Exact cover of the n^2 cells by n transversals. Undecided means the node
/// budget ran out; it never stands for "none".
DecomposeResult decompose(const LatinSquare& ls, const DecomposeOptions& opts = {});

}  // namespace latdec
