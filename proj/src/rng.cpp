#include "latdec/rng.hpp"

namespace latdec {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

SeededRng SeededRng::derive(std::uint64_t index) const {
  return SeededRng(seed_, splitmix64(stream_ * 0x100000001b3ULL + index + 1));
}

}  // namespace latdec
