#include <bit>
#include <utility>
#include <vector>

#include "latdec/transversal.hpp"
#include "transversal_kernels.hpp"

#ifdef LATDEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace latdec {

using detail::Mask;
using detail::full_mask;

std::uint64_t count_transversals_parallel(const LatinSquare& ls, int workers) {
  const int n = ls.order();
  if (n > kMaxMaskOrder) return count_transversals_serial(ls);
  if (n < 3) return count_transversals_serial(ls);

  // Independent prefixes: legal (row 0, row 1) column choices.
  std::vector<std::pair<int, int>> prefixes;
  for (int c0 = 0; c0 < n; ++c0)
    for (int c1 = 0; c1 < n; ++c1)
      if (c0 != c1 && ls.at(0, c0) != ls.at(1, c1)) prefixes.emplace_back(c0, c1);

  const Mask all = full_mask(n);
  const auto count = static_cast<long>(prefixes.size());
  std::uint64_t total = 0;
#ifdef LATDEC_HAVE_OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total) num_threads(threads)
#else
  (void)workers;
#endif
  for (long i = 0; i < count; ++i) {
    const auto [c0, c1] = prefixes[i];
    const Mask cols = all & ~(Mask{1} << c0) & ~(Mask{1} << c1);
    const Mask syms = all & ~(Mask{1} << ls.at(0, c0)) & ~(Mask{1} << ls.at(1, c1));
    total += detail::count_from(ls, 2, cols, syms);
  }
  return total;
}

}  // namespace latdec
