#pragma once

// Approximately uniform random Latin squares (Jacobson-Matthews chain) and
// exhaustive enumeration at small orders.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latdec/core.hpp"
#include "latdec/rng.hpp"

namespace latdec {

/// Incidence cube of the Jacobson-Matthews walk. Proper states are Latin
/// squares; improper states carry exactly one -1 entry.
class MarkovState {
 public:
  explicit MarkovState(const LatinSquare& start);

  int order() const { return n_; }
  bool is_proper() const { return !improper_; }
  int entry(int r, int c, int s) const { return cube_[index(r, c, s)]; }

  /// One move of the chain, in place.
  void step(SeededRng& rng);

  /// nullopt if every line sums to 1, at most one entry is -1 and the rest
  /// are 0/1; otherwise the first problem.
  std::optional<std::string> check_invariants() const;

  /// The square of a proper state. Throws std::logic_error when improper.
  LatinSquare square() const;

  friend bool operator==(const MarkovState&, const MarkovState&) = default;

 private:
  std::size_t index(int r, int c, int s) const {
    return (static_cast<std::size_t>(r) * n_ + c) * n_ + s;
  }
  void flip(int r, int c, int s, int r2, int c2, int s2);

  struct Improper {
    int r, c, s;
    friend bool operator==(const Improper&, const Improper&) = default;
  };

  int n_;
  std::vector<std::int8_t> cube_;
  std::optional<Improper> improper_;
};

MarkovState jm_step(MarkovState state, SeededRng& rng);

inline std::uint64_t default_burnin(int n) { return 10ULL * n * n * n; }
inline std::uint64_t default_thin(int n) { return 1ULL * n * n * n; }

/// Runs the chain from the cyclic square until `burnin` proper states have
/// been visited and returns the last one.
LatinSquare sample_uniform(int n, SeededRng& rng, std::uint64_t burnin);

/// `count` squares: the first after `burnin` proper visits, each further one
/// `thin` proper visits after the previous.
std::vector<LatinSquare> sample_many(int n, SeededRng& rng, std::uint64_t burnin,
                                     std::uint64_t thin, std::size_t count);

inline constexpr int kMaxReducedOrder = 6;
inline constexpr int kMaxAllOrder = 5;

/// Every reduced square, in lexicographic row-major order. Refuses n > 6.
/// Returning false from `visit` stops early.
void for_each_reduced(int n, const std::function<bool(const LatinSquare&)>& visit);
std::vector<LatinSquare> enumerate_reduced(int n);

/// Every Latin square, in lexicographic row-major order. Refuses n > 5.
void for_each_latin_square(int n, const std::function<bool(const LatinSquare&)>& visit);
std::vector<LatinSquare> enumerate_all(int n);

}  // namespace latdec
