#include <doctest.h>

#include <functional>

#include "latdec/exact_cover.hpp"
#include "latdec/sampler.hpp"
#include "latdec/transversal.hpp"
#include "oracles.hpp"

using namespace latdec;

namespace {

LatinSquare klein4() {
  // Cayley table of Z2 x Z2: x XOR y
  std::vector<int> cells(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) cells[r * 4 + c] = r ^ c;
  return LatinSquare::from_flat(4, cells);
}

}  // namespace

TEST_SUITE("transversal") {

TEST_CASE("transversal counts of cyclic squares") {
  CHECK(count_transversals(LatinSquare::cyclic(1)) == 1);
  CHECK(count_transversals(LatinSquare::cyclic(3)) == 3);
  CHECK(count_transversals(LatinSquare::cyclic(5)) == 15);
  CHECK(count_transversals(LatinSquare::cyclic(7)) == 133);
  for (int m = 1; m <= 3; ++m) CHECK(enumerate_transversals(LatinSquare::cyclic(2 * m)).empty());
  CHECK(count_transversals(LatinSquare::cyclic(4)) == 0);
  for (int n = 1; n <= 7; ++n) CHECK(count_transversals(LatinSquare::cyclic(n)) == oracle::transversal_count(LatinSquare::cyclic(n)));
}

TEST_CASE("enumeration is canonical, valid and duplicate-free") {
  SeededRng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ls = sample_uniform(6, rng, 500);
    const auto ts = enumerate_transversals(ls);
    const auto perms = oracle::transversal_permutations(ls);  // lexicographic
    REQUIRE(ts.size() == perms.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
      REQUIRE(is_transversal(ls, ts[k].cells));
      for (int r = 0; r < 6; ++r) REQUIRE(ts[k].cells[r] == Cell{r, perms[k][r]});
    }
    CHECK(enumerate_transversals(ls, 2).size() == std::min<std::size_t>(2, ts.size()));
  }
}

TEST_CASE("serial and parallel kernels agree") {
  SeededRng rng(8);
  for (int n = 2; n <= 10; ++n) {
    const auto ls = sample_uniform(n, rng, 1000);
    const auto s = count_transversals_serial(ls);
    CHECK(count_transversals_parallel(ls, 1) == s);
    CHECK(count_transversals_parallel(ls, 3) == s);
    CHECK(count_transversals(ls) == s);
  }
  CHECK(count_transversals_parallel(LatinSquare::cyclic(9), 2) == 2025);
}

TEST_CASE("maximum partial transversals") {
  CHECK(max_partial_transversal(LatinSquare::cyclic(2)).size() == 1);
  CHECK(max_partial_transversal(LatinSquare::cyclic(5)).size() == 5);
  const auto p6 = max_partial_transversal(LatinSquare::cyclic(6));
  CHECK(p6.size() == 5);
  CHECK_FALSE(check_partial_transversal(LatinSquare::cyclic(6), p6.cells));
  CHECK(max_partial_transversal(LatinSquare::cyclic(8)).size() == 7);
  CHECK_THROWS_WITH_AS((void)max_partial_transversal(LatinSquare::cyclic(10)),
                       doctest::Contains("exact search refused"), SearchRefused);
  CHECK(max_partial_transversal(LatinSquare::cyclic(10), 10).size() == 9);
}

TEST_CASE("decompose on the classical examples") {
  const auto r9 = decompose(LatinSquare::cyclic(9));
  CHECK(r9.status == SearchStatus::Found);
  REQUIRE(r9.decomposition);
  CHECK(verify_decomposition(LatinSquare::cyclic(9), *r9.decomposition).ok);

  const auto r6 = decompose(LatinSquare::cyclic(6));
  CHECK(r6.status == SearchStatus::None);
  CHECK_FALSE(r6.decomposition);

  const auto k4 = decompose(klein4());
  CHECK(k4.status == SearchStatus::Found);
  CHECK(verify_decomposition(klein4(), *k4.decomposition).ok);
}

TEST_CASE("decompose matches the exhaustive oracle") {
  for_each_latin_square(4, [](const LatinSquare& ls) {
    const auto r = decompose(ls);
    REQUIRE((r.status == SearchStatus::Found) == oracle::decomposable(ls));
    if (r.decomposition) REQUIRE(verify_decomposition(ls, *r.decomposition).ok);
    return true;
  });
  for (const auto& ls : enumerate_reduced(5)) {
    const auto r = decompose(ls);
    CHECK((r.status == SearchStatus::Found) == oracle::decomposable(ls));
  }
  SeededRng rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto ls = sample_uniform(5, rng, 300);
    CHECK((decompose(ls).status == SearchStatus::Found) == oracle::decomposable(ls));
  }
}

TEST_CASE("decompositions are disjoint rainbow perfect matchings of the colouring") {
  // n <= 4: enumerate rainbow perfect matchings directly on the colouring
  for (int n = 1; n <= 4; ++n) {
    for_each_latin_square(n, [n](const LatinSquare& ls) {
      const auto col = to_coloring(ls);
      std::vector<std::vector<Edge>> rainbow;
      std::vector<int> p(n);
      for (int k = 0; k < n; ++k) p[k] = k;
      do {
        std::vector<Edge> m;
        for (int a = 0; a < n; ++a) m.push_back({a, p[a]});
        if (is_rainbow_perfect_matching(col, m)) rainbow.push_back(m);
      } while (std::next_permutation(p.begin(), p.end()));
      // n disjoint rainbow perfect matchings <=> rainbow ones partition the edges
      std::vector<char> used(n * n, 0);
      std::function<bool(int)> pick = [&](int k) -> bool {
        if (k == n) return true;
        for (const auto& m : rainbow) {
          if (m[0].b != k) continue;
          bool ok = true;
          for (auto e : m) ok = ok && !used[e.a * n + e.b];
          if (!ok) continue;
          for (auto e : m) used[e.a * n + e.b] = 1;
          if (pick(k + 1)) return true;
          for (auto e : m) used[e.a * n + e.b] = 0;
        }
        return false;
      };
      REQUIRE((decompose(ls).status == SearchStatus::Found) == pick(0));
      return true;
    });
  }
}

TEST_CASE("node budget exhaustion is undecided, not none") {
  DecomposeOptions opts;
  opts.node_budget = 1;
  const auto r = decompose(LatinSquare::cyclic(9), opts);
  CHECK(r.status == SearchStatus::Undecided);
  CHECK_FALSE(r.decomposition);
}

TEST_CASE("lazy candidate generation") {
  DecomposeOptions opts;
  opts.lazy_threshold = 0;
  const auto r = decompose(LatinSquare::cyclic(9), opts);
  CHECK(r.lazy);
  CHECK(r.status == SearchStatus::Found);
  CHECK(verify_decomposition(LatinSquare::cyclic(9), *r.decomposition).ok);
  CHECK(decompose(LatinSquare::cyclic(6), opts).status == SearchStatus::None);
  SeededRng rng(4);
  for (int t = 0; t < 40; ++t) {
    const auto ls = sample_uniform(5, rng, 300);
    CHECK(decompose(ls, opts).status == decompose(ls).status);
  }
}

TEST_CASE("exact cover basics") {
  // items 0..3; options {0,1}, {2,3}, {0,2}, {1,3}, {1,2}
  ExactCover ec(4);
  for (auto opt : std::vector<std::vector<int>>{{0, 1}, {2, 3}, {0, 2}, {1, 3}, {1, 2}}) ec.add_option(opt);
  CHECK(ec.count(100) == 2);
  const auto r = ec.solve(1000);
  CHECK(r.status == SearchStatus::Found);
  CHECK(r.options.size() == 2);
  ExactCover none(3);
  none.add_option(std::vector<int>{0, 1});
  none.add_option(std::vector<int>{1, 2});
  CHECK(none.solve(1000).status == SearchStatus::None);
}

}  // TEST_SUITE
