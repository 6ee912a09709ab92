#include <doctest.h>

#include <map>

#include "latdec/absorber.hpp"

using namespace latdec;

namespace {

CorrectionInstance make_instance(int m, int N, std::vector<std::vector<int>> T, std::vector<std::vector<int>> Rp,
                                 std::vector<std::vector<int>> extra_R = {}) {
  CorrectionInstance inst;
  inst.num_indices = m;
  inst.num_vertices = N;
  T.resize(m);
  Rp.resize(m);
  extra_R.resize(m);
  inst.T = T;
  inst.Rp = Rp;
  inst.R = Rp;
  for (int i = 0; i < m; ++i) inst.R[i].insert(inst.R[i].end(), extra_R[i].begin(), extra_R[i].end());
  inst.normalize();
  return inst;
}

struct Run {
  CorrectionSet c;
  std::vector<CorrectionStage> stages;
  std::vector<std::string> problems;
};

Run solve(const CorrectionInstance& inst, std::uint64_t seed = 1) {
  Run r;
  CorrectionOptions opts;
  opts.observer = [&](CorrectionStage s, const DirectedColoredMultigraph& d) {
    r.stages.push_back(s);
    if (auto err = check_net_degrees(inst, d)) r.problems.push_back(std::string(to_string(s)) + ": " + *err);
  };
  SeededRng rng(seed);
  r.c = decompose_corrections(inst, rng, opts);
  return r;
}

}  // namespace

TEST_SUITE("absorber") {

TEST_CASE("instance validation") {
  CHECK_NOTHROW(make_instance(2, 4, {{0}, {1}}, {{1}, {0}}));
  // R'_i must avoid T_i
  CHECK_THROWS_AS(make_instance(2, 4, {{0}, {1}}, {{0}, {1}}), InvalidInput);
  // multisets of T and R' differ
  CHECK_THROWS_AS(make_instance(2, 4, {{0}, {1}}, {{2}, {0}}), InvalidInput);
  // |R'_i| != |T_i|
  CHECK_THROWS_AS(make_instance(2, 4, {{0}, {}}, {{}, {0}}), InvalidInput);
  // out of range
  CHECK_THROWS_AS(make_instance(2, 4, {{7}, {1}}, {{1}, {7}}), InvalidInput);
}

TEST_CASE("empty instance gives no pairs") {
  const auto inst = make_instance(3, 10, {}, {});
  const auto r = solve(inst);
  CHECK(r.c.pairs.empty());
  CHECK(verify_corrections(inst, r.c).ok);
  CHECK(r.problems.empty());
}

TEST_CASE("a two-index swap is a single pair") {
  const auto inst = make_instance(2, 6, {{1}, {4}}, {{4}, {1}});
  const auto r = solve(inst);
  REQUIRE(r.c.pairs.size() == 1);
  CHECK(r.c.pairs[0] == SwitchPair{{0, 1}, {1, 4}});
  CHECK(verify_corrections(inst, r.c).ok);
  CHECK(r.problems.empty());
  const std::vector<CorrectionStage> all{CorrectionStage::Matchings, CorrectionStage::Cycles,
                                         CorrectionStage::RainbowRepair, CorrectionStage::Triangulation,
                                         CorrectionStage::Gadgets, CorrectionStage::Pairs};
  CHECK(r.stages == all);
}

TEST_CASE("verification catches broken sets") {
  const auto inst = make_instance(2, 6, {{1}, {4}}, {{4}, {1}});
  auto rep = verify_corrections(inst, {});
  CHECK_FALSE(rep.ok);
  bool a11 = false;
  for (const auto& v : rep.violations) a11 = a11 || (v.rule == "A1-1" && v.index == 0 && v.vertex == 1);
  CHECK(a11);

  rep = verify_corrections(inst, {{SwitchPair{{0, 1}, {0, 4}}}});  // i == j
  CHECK_FALSE(rep.ok);
  CHECK(rep.violations[0].rule == "membership");

  // u = 4 lies in R_1
  rep = verify_corrections(inst, {{SwitchPair{{0, 4}, {1, 1}}}});
  CHECK_FALSE(rep.ok);

  // unrequested arcs are fine while every other vertex stays balanced
  CorrectionSet c{{SwitchPair{{0, 1}, {1, 4}}, SwitchPair{{0, 2}, {1, 3}}, SwitchPair{{0, 3}, {1, 2}}}};
  CHECK(verify_corrections(inst, c).ok);
  // an extra in-arc at an R \ R' vertex is not
  const auto inst2 = make_instance(2, 6, {{1}, {4}}, {{4}, {1}}, {{5}, {}});
  CorrectionSet c2{{SwitchPair{{0, 1}, {1, 4}}, SwitchPair{{0, 2}, {1, 5}}}};
  rep = verify_corrections(inst2, c2);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("non-rainbow cycles are repaired") {
  // a->b (1), b->c (2), c->d (1), d->a (3): colour 1 twice
  const int a = 0, b = 1, c = 2, d = 3;
  const auto inst = make_instance(3, 8, {{a, c}, {b}, {d}}, {{b, d}, {c}, {a}});
  const auto r = solve(inst);
  CHECK(r.problems.empty());
  CHECK(verify_corrections(inst, r.c).ok);
  const std::vector<SwitchPair> expected{SwitchPair{{0, a}, {2, d}}, SwitchPair{{0, c}, {1, b}}};
  CHECK(r.c.pairs == expected);
}

TEST_CASE("a rainbow triangle needs a fourth colour") {
  const auto tri3 = make_instance(3, 12, {{0}, {1}, {2}}, {{1}, {2}, {0}});
  SeededRng rng(1);
  try {
    (void)decompose_corrections(tri3, rng);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.stage() == CorrectionStage::Gadgets);
    CHECK(std::string(e.what()).find("insufficient colour space") != std::string::npos);
  }

  const auto tri4 = make_instance(4, 12, {{0}, {1}, {2}}, {{1}, {2}, {0}});
  const auto r = solve(tri4);
  CHECK(r.problems.empty());
  CHECK(r.c.pairs.size() == 6);
  CHECK(verify_corrections(tri4, r.c).ok);
}

TEST_CASE("longer rainbow cycles are triangulated") {
  for (int L : {4, 5, 7}) {
    std::vector<std::vector<int>> T(L + 2), Rp(L + 2);
    for (int k = 0; k < L; ++k) {
      T[k] = {k};
      Rp[k] = {(k + 1) % L};
    }
    const auto inst = make_instance(L + 2, 60, T, Rp);
    const auto r = solve(inst);
    INFO("L = " << L);
    CHECK(r.problems.empty());
    CHECK(verify_corrections(inst, r.c).ok);
    CHECK(r.c.pairs.size() == 6 * static_cast<std::size_t>(L - 2));
  }
}

TEST_CASE("random instances at moderate scale") {
  SeededRng master(99);
  int solved = 0;
  for (int t = 0; t < 40; ++t) {
    SeededRng gen = master.derive(t);
    const auto inst = random_correction_instance(12, 150, 3, gen);
    REQUIRE_FALSE(inst.check());
    const auto r = solve(inst, 1000 + t);
    CHECK(r.problems.empty());
    const auto rep = verify_corrections(inst, r.c);
    CHECK(rep.ok);
    solved += rep.ok;
    // deterministic for a fixed stream
    CHECK(solve(inst, 1000 + t).c.pairs == r.c.pairs);
  }
  CHECK(solved == 40);
}

TEST_CASE("feasibility margin") {
  const auto inst = make_instance(2, 3, {{1}, {2}}, {{2}, {1}});
  CorrectionOptions opts;
  opts.feasibility_factor = 100;
  SeededRng rng(1);
  CHECK_THROWS_AS((void)decompose_corrections(inst, rng, opts), InvalidInput);
}

TEST_CASE("JSON round trips") {
  SeededRng rng(5);
  const auto inst = random_correction_instance(5, 30, 2, rng);
  const auto j = instance_to_json(inst);
  CHECK(j["indices"] == 5);
  CHECK(j["vertices"] == 30);
  const auto back = instance_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.T == inst.T);
  CHECK(back.R == inst.R);
  CHECK(back.Rp == inst.Rp);

  CorrectionSet c{{SwitchPair{{0, 1}, {1, 4}}}};
  const auto cj = corrections_to_json(c);
  CHECK(cj["pairs"][0] == nlohmann::json::parse("[[1, 2], [2, 5]]"));
  CHECK(corrections_from_json(cj).pairs == c.pairs);
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"indices": 1})")), InvalidInput);
}

}  // TEST_SUITE
