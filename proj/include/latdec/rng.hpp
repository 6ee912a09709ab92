#pragma once

#include <cstdint>
#include <random>

namespace latdec {

/// A reproducible random stream identified by (master seed, stream index).
/// Streams are derived counter-style: the engine seed is a SplitMix64 hash
/// of both numbers, so trial k always sees the same draws no matter which
/// worker runs it or in which order.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent child stream; `index` is appended to this stream's path.
  SeededRng derive(std::uint64_t index) const;

  /// Uniform integer in [0, bound). bound must be positive.
  int below(int bound) { return std::uniform_int_distribution<int>(0, bound - 1)(engine_); }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool coin() { return below(2) == 1; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace latdec
