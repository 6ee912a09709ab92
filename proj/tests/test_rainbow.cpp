#include <doctest.h>

#include "fixtures.hpp"
#include "latdec/rainbow.hpp"

using namespace latdec;

TEST_SUITE("rainbow") {

TEST_CASE("near-matching checks") {
  const auto base = to_coloring(LatinSquare::cyclic(5));
  auto fam = NearMatchingFamily::make(base, {{{0, 0}, {1, 1}}, {{0, 1}, {2, 2}}});
  CHECK(check_near_matching(fam).ok);

  // colour 2 twice: (1,1) and (0,2)
  auto rep = check_near_matching(NearMatchingFamily::make(base, {{{1, 1}, {0, 2}}}));
  CHECK_FALSE(rep.ok);
  // shared edge
  CHECK_FALSE(check_near_matching(NearMatchingFamily::make(base, {{{0, 0}}, {{0, 0}}})).ok);
  // a1 is in T_1 so it needs degree 2; it has 1
  auto t = NearMatchingFamily::make(base, {{{0, 0}}}, {{}}, {{0}});
  rep = check_near_matching(t);
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.violations[0].vertex == 0);
  // T vertex with degree 2 is fine
  CHECK(check_near_matching(NearMatchingFamily::make(base, {{{0, 0}, {0, 1}}}, {{}}, {{0}})).ok);
  // R vertex must be isolated
  CHECK_FALSE(check_near_matching(NearMatchingFamily::make(base, {{{0, 0}}}, {{5}}, {{}})).ok);
  // R and T overlap
  CHECK_FALSE(check_near_matching(NearMatchingFamily::make(base, {{}}, {{3}}, {{3}})).ok);
}

TEST_CASE("the hand-checked switcher") {
  const auto fam = fixture::switcher_family();
  REQUIRE(check_near_matching(fam).ok);
  const Switcher expected{0, 1, {5, 0, 6, 1, 7, 2, 8}};
  CHECK_FALSE(check_switcher(fam, expected));
  const auto sw = find_switcher(fam, 0, 1, 5, 8, 6);
  REQUIRE(sw);
  CHECK(*sw == expected);
  CHECK(sw->length() == 6);
  CHECK_FALSE(find_switcher(fam, 0, 1, 5, 8, 4));

  const auto after = apply_switcher(fam, *sw);
  CHECK_FALSE(check_switch_postconditions(fam, after, *sw));
  CHECK(after.degree(0, 5) == 0);
  CHECK(after.degree(0, 8) == 1);
  CHECK(after.degree(1, 5) == 1);
  CHECK(after.degree(1, 8) == 0);
  CHECK(apply_switcher(after, transposed(*sw)) == fam);
}

TEST_CASE("short and malformed switchers") {
  const auto fam = fixture::switcher_family();
  // length 2 never works: both edges would join the same two vertices' colour
  CHECK(check_switcher(fam, Switcher{0, 1, {5, 0, 6}}));
  CHECK(check_switcher(fam, Switcher{0, 0, {5, 0, 6, 1, 7, 2, 8}}));
  CHECK(check_switcher(fam, Switcher{0, 1, {5, 0, 5, 1, 7, 2, 8}}));
  CHECK_THROWS_AS(find_switcher(fam, 0, 1, 5, 5, 6), InvalidInput);
  CHECK_THROWS_AS(find_switcher(fam, 0, 1, 5, 2, 6), InvalidInput);
  CHECK_THROWS_AS(find_switcher(fam, 0, 4, 5, 8, 6), InvalidInput);
  CHECK_THROWS_AS(apply_switcher(fam, Switcher{1, 0, {5, 0, 6, 1, 7, 2, 8}}), InvalidInput);
}

TEST_CASE("no switcher shorter than six exists in any order-5 square") {
  // a length-4 path x a y b z with colours c1 c2 c3 c4 needs {c1, c3} == {c2, c4};
  // since c1 != c2 that means c2 == c3, two equal colours at y
  SeededRng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto base = to_coloring(sample_uniform(5, rng, 500));
    for (Vertex x = 0; x < 5; ++x)
      for (int a = 0; a < 5; ++a)
        for (Vertex y = 0; y < 5; ++y)
          for (int b = 0; b < 5; ++b)
            for (Vertex z = 0; z < 5; ++z) {
              if (x == y || y == z || x == z || a == b) continue;
              const int c1 = base.color(x, a), c2 = base.color(y, a), c3 = base.color(y, b), c4 = base.color(z, b);
              REQUIRE_FALSE((c1 != c3 && c2 != c4 && std::min(c1, c3) == std::min(c2, c4) &&
                             std::max(c1, c3) == std::max(c2, c4)));
            }
  }
}

TEST_CASE("randomized find/apply round trips") {
  SeededRng rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    const auto sc = fixture::random_switch_case(7, 3, rng);
    REQUIRE(check_near_matching(sc.fam).ok);
    REQUIRE_FALSE(check_switcher(sc.fam, Switcher{sc.i, sc.j, sc.planted}));
    const auto sw = find_switcher(sc.fam, sc.i, sc.j, sc.x, sc.y, 6);
    REQUIRE(sw);
    const auto after = apply_switcher(sc.fam, *sw);
    CHECK_FALSE(check_switch_postconditions(sc.fam, after, *sw));
    CHECK(check_near_matching(after).ok);
    CHECK(apply_switcher(after, transposed(*sw)) == sc.fam);
  }
}

TEST_CASE("switch requests") {
  SwitchRequestSet s;
  s.pairs.push_back({{0, 3}, {1, 7}});  // 3->7 in colour 0, 7->3 in colour 1
  const RequestDegrees d(s);
  CHECK(d.out(0, 3) == 1);
  CHECK(d.in(0, 7) == 1);
  CHECK(d.out(1, 7) == 1);
  CHECK(d.in(1, 3) == 1);
  CHECK(d.out(0, 7) == 0);
  CHECK_FALSE(is_le1_balanced(s, 0, 3));
  CHECK(is_le1_balanced(s, 2, 3));
  s.pairs.push_back({{0, 7}, {1, 3}});  // closes both colours into 2-cycles
  CHECK(is_le1_balanced(s, 0, 3));
  CHECK(is_le1_balanced(s, 0, 7));
  CHECK(is_le1_balanced(s, 1, 3));
  s.pairs.push_back({{0, 3}, {2, 9}});
  CHECK_FALSE(is_le1_balanced(s, 0, 3));  // out 2, in 1
  CHECK(SwitchPair{{2, 1}, {0, 5}}.normalized() == SwitchPair{{0, 5}, {2, 1}});
}

TEST_CASE("family JSON round trip") {
  auto fam = fixture::switcher_family();
  fam.R = {{9}, {}};
  fam.T = {{}, {4}};
  const auto j = family_to_json(fam);
  CHECK(j["n"] == 5);
  CHECK(j["m"] == 2);
  CHECK(j["matchings"][0][0] == nlohmann::json::array({1, 1}));
  CHECK(j["R"][0][0] == 10);
  CHECK(family_from_json(j) == fam);
  CHECK(family_from_json(nlohmann::json::parse(j.dump())) == fam);
  CHECK_THROWS_AS(family_from_json(nlohmann::json::parse(R"({"n": 2})")), InvalidInput);
}

}  // TEST_SUITE
