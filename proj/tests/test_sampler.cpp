#include <doctest.h>

#include <cmath>
#include <set>

#include "latdec/sampler.hpp"
#include "oracles.hpp"

using namespace latdec;

TEST_SUITE("sampler") {

TEST_CASE("chain invariants hold along a long walk") {
  SeededRng rng(11);
  MarkovState st(LatinSquare::cyclic(4));
  std::uint64_t proper = 0;
  for (int t = 0; t < 1'000'000; ++t) {
    st.step(rng);
    if (t % 997 == 0) REQUIRE_FALSE(st.check_invariants());
    if (st.is_proper()) {
      ++proper;
      if (t % 101 == 0) REQUIRE_FALSE(find_latin_violation(4, st.square().flat()));
    }
  }
  CHECK_FALSE(st.check_invariants());
  CHECK(proper > 100'000);
}

TEST_CASE("tiny orders") {
  SeededRng rng(2);
  CHECK(sample_uniform(1, rng, 50) == LatinSquare::cyclic(1));
  const auto a = LatinSquare::cyclic(2);
  const auto b = LatinSquare::from_grid(2, {{1, 0}, {0, 1}});
  std::set<LatinSquare> seen;
  for (const auto& ls : sample_many(2, rng, 10, 1, 200)) {
    REQUIRE((ls == a || ls == b));
    seen.insert(ls);
  }
  CHECK(seen.size() == 2);
}

TEST_CASE("same seed, same samples") {
  SeededRng r1(77), r2(77), r3(78);
  const auto s1 = sample_many(7, r1, 500, 50, 5);
  const auto s2 = sample_many(7, r2, 500, 50, 5);
  const auto s3 = sample_many(7, r3, 500, 50, 5);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  SeededRng d1 = SeededRng(5).derive(3), d2 = SeededRng(5).derive(3);
  CHECK(sample_uniform(6, d1, 300) == sample_uniform(6, d2, 300));
}

TEST_CASE("reduced squares are counted correctly") {
  const std::uint64_t expected[] = {0, 1, 1, 1, 4, 56, 9408};
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t c = 0;
    LatinSquare prev = LatinSquare::cyclic(1);
    bool sorted = true, reduced = true;
    for_each_reduced(n, [&](const LatinSquare& ls) {
      if (c > 0 && !(prev < ls)) sorted = false;
      if (!ls.is_reduced()) reduced = false;
      prev = ls;
      ++c;
      return true;
    });
    CHECK(c == expected[n]);
    CHECK(sorted);
    CHECK(reduced);
    if (n <= 5) CHECK(c == oracle::count_squares(n, true));
  }
  CHECK_THROWS_AS(enumerate_reduced(7), InvalidInput);
}

TEST_CASE("all squares are counted correctly") {
  CHECK(enumerate_all(1).size() == 1);
  CHECK(enumerate_all(2).size() == 2);
  CHECK(enumerate_all(3).size() == 12);
  CHECK(enumerate_all(4).size() == 576);
  std::uint64_t c5 = 0;
  for_each_latin_square(5, [&](const LatinSquare&) { ++c5; return true; });
  CHECK(c5 == 161280);
  CHECK(oracle::count_squares(5, false) == 161280);
  CHECK_THROWS_AS(enumerate_all(6), InvalidInput);
  // early stop
  int seen = 0;
  for_each_latin_square(4, [&](const LatinSquare&) { return ++seen < 10; });
  CHECK(seen == 10);
}

TEST_CASE("cell marginals are uniform at order 5") {
  SeededRng rng(2024);
  const int n = 5, samples = 10'000;
  std::vector<int> hits(n, 0);  // symbol at cell (2, 3)
  for (const auto& ls : sample_many(n, rng, default_burnin(n), default_thin(n), samples)) ++hits[ls.at(2, 3)];
  const double p = 1.0 / n, se = std::sqrt(p * (1 - p) / samples);
  for (int s = 0; s < n; ++s) CHECK(std::abs(hits[s] / double(samples) - p) < 3 * se + 1e-12);
}

}  // TEST_SUITE
