// Serial vs OpenMP transversal counting, plus the L_k link kernel.
// Usage: latdec_bench [max_order] [workers]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "latdec/links.hpp"
#include "latdec/sampler.hpp"
#include "latdec/transversal.hpp"

using namespace latdec;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int max_order = argc > 1 ? std::atoi(argv[1]) : 12;
  const int workers = argc > 2 ? std::atoi(argv[2]) : 0;
  SeededRng rng(1);

  std::printf("%-6s %-8s %14s %10s %10s %8s\n", "order", "square", "transversals", "serial_s", "omp_s", "speedup");
  for (int n = 7; n <= max_order; ++n) {
    for (const bool cyclic : {true, false}) {
      const LatinSquare ls = cyclic ? LatinSquare::cyclic(n) : sample_uniform(n, rng, default_burnin(n));
      std::uint64_t a = 0, b = 0;
      const double ts = seconds([&] { a = count_transversals_serial(ls); });
      const double tp = seconds([&] { b = count_transversals_parallel(ls, workers); });
      if (a != b) {
        std::fprintf(stderr, "kernel mismatch at order %d: %llu vs %llu\n", n, static_cast<unsigned long long>(a),
                     static_cast<unsigned long long>(b));
        return 1;
      }
      std::printf("%-6d %-8s %14llu %10.4f %10.4f %8.2f\n", n, cyclic ? "cyclic" : "random",
                  static_cast<unsigned long long>(a), ts, tp, tp > 0 ? ts / tp : 0.0);
    }
  }

  std::printf("\n%-6s %-3s %12s %10s\n", "order", "k", "sum_links", "seconds");
  for (int n : {20, 40}) {
    const auto host = to_coloring(sample_uniform(n, rng, default_burnin(n)));
    for (int k : {2, 3}) {
      const auto pat = make_repeat_pattern(k);
      std::uint64_t total = 0;
      const double t = seconds([&] {
        for (int v = 1; v < 2 * n; ++v) total += count_links(host, 0, v, pat).value;
      });
      std::printf("%-6d %-3d %12llu %10.4f\n", n, k, static_cast<unsigned long long>(total), t);
    }
  }
  return 0;
}
