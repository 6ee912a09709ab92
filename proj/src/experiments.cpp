#include "latdec/experiments.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "latdec/connector.hpp"
#include "latdec/io.hpp"
#include "latdec/sampler.hpp"
#include "latdec/transversal.hpp"

#ifdef LATDEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace latdec {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int thread_count(int workers) {
#ifdef LATDEC_HAVE_OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

std::string csv_cell(const ojson& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

struct MeanVar {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
};

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials), p = hits / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ojson ExperimentReport::to_json() const {
  return ojson{{"schema_version", kReportSchemaVersion},
               {"command", command},
               {"version", LATDEC_VERSION},
               {"seed", seed},
               {"parameters", parameters},
               {"summary", summary},
               {"trials", trials},
               {"exit_code", exit_code},
               {"message", message},
               {"seconds", seconds}};
}

std::string ExperimentReport::to_text() const {
  std::ostringstream os;
  os << command << " (latdec " << LATDEC_VERSION << ", seed " << seed << ")\n";
  for (const auto& [k, v] : parameters.items()) os << "  " << k << " = " << v.dump() << '\n';
  for (const auto& [k, v] : summary.items()) os << k << ": " << v.dump() << '\n';
  if (!message.empty()) os << message << '\n';
  os << "seconds: " << seconds << '\n';
  return os.str();
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  if (trials.empty()) return "";
  bool first = true;
  for (const auto& [k, v] : trials.front().items()) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << '\n';
  for (const auto& rec : trials) {
    first = true;
    for (const auto& [k, v] : rec.items()) {
      os << (first ? "" : ",") << csv_cell(v);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

ExperimentReport cmd_tarry_check(const TarryOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "tarry-check";
  rep.parameters = {{"n", opts.n}, {"cyclic_prefix_only", opts.cyclic_prefix_only}, {"node_budget", opts.node_budget}};

  const LatinSquare cyc = LatinSquare::cyclic(opts.n);
  const auto prefix = cyc.flat();
  std::vector<LatinSquare> squares;
  for_each_reduced(opts.n, [&](const LatinSquare& ls) {
    const int keep = std::min(2, opts.n) * opts.n;
    if (!opts.cyclic_prefix_only || std::equal(prefix.begin(), prefix.begin() + keep, ls.flat().begin()))
      squares.push_back(ls);
    return true;
  });

  const long long count = static_cast<long long>(squares.size());
  std::vector<SearchStatus> status(count);
  std::vector<std::uint64_t> transversals(count);
  DecomposeOptions dopts;
  dopts.node_budget = opts.node_budget;
#ifdef LATDEC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count(opts.workers))
#endif
  for (long long s = 0; s < count; ++s) {
    transversals[s] = count_transversals_serial(squares[s]);
    status[s] = decompose(squares[s], dopts).status;
  }

  std::map<std::uint64_t, std::uint64_t> distribution;
  std::uint64_t found = 0, undecided = 0;
  std::optional<long long> offender;
  for (long long s = 0; s < count; ++s) {
    ++distribution[transversals[s]];
    if (status[s] == SearchStatus::Found) ++found;
    if (status[s] == SearchStatus::Undecided) ++undecided;
    if (status[s] != SearchStatus::None && !offender) offender = s;
  }
  for (const auto& [t, c] : distribution) rep.trials.push_back({{"transversals", t}, {"squares", c}});
  rep.summary = {{"examined", count}, {"resolvable", found}, {"undecided", undecided},
                 {"none", count - static_cast<long long>(found + undecided)}};
  if (offender) {
    rep.exit_code = 3;
    rep.message = std::string("square with status ") + to_string(status[*offender]) + ":\n" +
                  io::square_to_string(squares[*offender]);
  } else {
    rep.message = "no reduced square of order " + std::to_string(opts.n) + " decomposes";
  }
  rep.seconds = since(t0);
  return rep;
}

ExperimentReport cmd_mc_decomposable(const McOptions& opts) {
  if (opts.n < 2) throw InvalidInput("mc-decomposable needs n >= 2");
  if (opts.trials < 0) throw InvalidInput("trial count must be non-negative");
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "mc-decomposable";
  rep.seed = opts.seed;
  const std::uint64_t burnin = opts.burnin.value_or(default_burnin(opts.n));
  rep.parameters = {{"n", opts.n}, {"trials", opts.trials}, {"burnin", burnin}, {"node_budget", opts.node_budget}};

  struct Trial {
    SearchStatus status = SearchStatus::None;
    std::uint64_t nodes = 0, candidates = 0;
    bool lazy = false, verified = false;
  };
  std::vector<Trial> out(opts.trials);
  const SeededRng master(opts.seed);
  DecomposeOptions dopts;
  dopts.node_budget = opts.node_budget;
#ifdef LATDEC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(opts.workers))
#endif
  for (int t = 0; t < opts.trials; ++t) {
    SeededRng rng = master.derive(static_cast<std::uint64_t>(t));
    const LatinSquare ls = sample_uniform(opts.n, rng, burnin);
    const DecomposeResult r = decompose(ls, dopts);
    out[t] = {r.status, r.nodes, r.candidates, r.lazy,
              r.decomposition && verify_decomposition(ls, *r.decomposition).ok};
  }

  std::uint64_t found = 0, undecided = 0, bad = 0;
  for (int t = 0; t < opts.trials; ++t) {
    const Trial& tr = out[t];
    rep.trials.push_back({{"trial", t}, {"status", to_string(tr.status)}, {"transversals", tr.candidates},
                          {"nodes", tr.nodes}, {"lazy", tr.lazy}, {"verified", tr.verified}});
    if (tr.status == SearchStatus::Found) {
      ++found;
      if (!tr.verified) ++bad;
    }
    if (tr.status == SearchStatus::Undecided) ++undecided;
  }
  const auto [lo, hi] = wilson_interval(found, opts.trials);
  rep.summary = {{"resolvable", found},
                 {"none", opts.trials - static_cast<long long>(found + undecided)},
                 {"undecided", undecided},
                 {"fraction", opts.trials ? static_cast<double>(found) / opts.trials : 0.0},
                 {"ci95", {lo, hi}},
                 {"failed_verification", bad}};
  if (bad > 0) {
    rep.exit_code = 3;
    rep.message = "a reported decomposition failed verification";
  } else if (2 * undecided > static_cast<std::uint64_t>(opts.trials)) {
    rep.exit_code = 2;
    rep.message = "most trials exhausted the node budget";
  }
  rep.seconds = since(t0);
  return rep;
}

ExperimentReport cmd_census_links(const CensusOptions& opts) {
  if ((opts.k > 0) == (opts.len > 0)) throw InvalidInput("census needs exactly one of k or len");
  if (opts.len > 0 && opts.len % 2 == 0) throw InvalidInput("path length must be odd");
  if (opts.n < 2) throw InvalidInput("census needs n >= 2");
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "census-links";
  rep.seed = opts.seed;
  const std::uint64_t burnin = opts.burnin.value_or(default_burnin(opts.n));
  rep.parameters = {{"n", opts.n}, {"k", opts.k}, {"len", opts.len}, {"pairs", opts.pairs}, {"burnin", burnin}};

  const SeededRng master(opts.seed);
  SeededRng square_rng = master.derive(0);
  const ProperColoring host = to_coloring(sample_uniform(opts.n, square_rng, burnin));
  const SeededRng endpoint_rng = master.derive(1);
  const int n = opts.n;

  struct Row {
    std::array<Vertex, 4> ends{};
    SaturatingCount count;
    double seconds = 0;
  };
  std::vector<Row> rows(std::max(0, opts.pairs));
  const Pattern pat = opts.k > 0 ? make_repeat_pattern(opts.k) : Pattern{};
#ifdef LATDEC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(opts.workers))
#endif
  for (int p = 0; p < opts.pairs; ++p) {
    SeededRng rng = endpoint_rng.derive(static_cast<std::uint64_t>(p));
    Row& row = rows[p];
    if (opts.k > 0) {
      // L_k has even length, so both ends lie on one side.
      const int side = rng.below(2) * n;
      const int a = rng.below(n);
      int b = rng.below(n - 1);
      if (b >= a) ++b;
      row.ends = {side + a, side + b, -1, -1};
      const auto s = Clock::now();
      row.count = count_links(host, row.ends[0], row.ends[1], pat);
      row.seconds = since(s);
    } else {
      // x1, x2 rows and y1, y2 columns (or the reverse), all distinct.
      const int flip = rng.below(2) * n;
      const int x1 = rng.below(n);
      int x2 = rng.below(n - 1);
      if (x2 >= x1) ++x2;
      const int y1 = rng.below(n);
      int y2 = rng.below(n - 1);
      if (y2 >= y1) ++y2;
      auto side = [&](int v, bool first) { return (first ? flip : n - flip) + v; };
      row.ends = {side(x1, true), side(y1, false), side(x2, true), side(y2, false)};
      const CensusResult r = census_path_pairs(host, {opts.len, row.ends[0], row.ends[1], row.ends[2], row.ends[3]});
      row.count = r.count;
      row.seconds = r.seconds;
    }
  }

  MeanVar stats;
  bool overflow = false;
  std::uint64_t max_count = 0;
  for (const Row& row : rows) {
    ojson rec{{"n", n}};
    if (opts.k > 0) {
      rec["k"] = opts.k;
      rec["u"] = row.ends[0] + 1;
      rec["v"] = row.ends[1] + 1;
    } else {
      rec["len"] = opts.len;
      rec["x1"] = row.ends[0] + 1;
      rec["y1"] = row.ends[1] + 1;
      rec["x2"] = row.ends[2] + 1;
      rec["y2"] = row.ends[3] + 1;
    }
    rec["count"] = row.count.value;
    rec["overflow"] = row.count.overflow;
    rec["seconds"] = row.seconds;
    rep.trials.push_back(rec);
    stats.add(static_cast<double>(row.count.value));
    overflow = overflow || row.count.overflow;
    max_count = std::max(max_count, row.count.value);
  }
  rep.summary = {{"mean", stats.mean}, {"variance", stats.variance()}, {"max", max_count}, {"overflow", overflow}};
  if (opts.k > 0) {
    rep.summary["heuristic_n_pow_k_minus_1"] = std::pow(static_cast<double>(n), opts.k - 1);
  } else {
    rep.summary["n_pow_1_02"] = std::pow(static_cast<double>(n), 1.02);
  }
  rep.seconds = since(t0);
  return rep;
}

ExperimentReport cmd_probe_subgraph(const ProbeOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "probe-subgraph";
  rep.seed = opts.seed;
  const std::uint64_t burnin = opts.burnin.value_or(default_burnin(opts.n));
  rep.parameters = {{"n", opts.n}, {"trials", opts.trials}, {"burnin", burnin},
                    {"edges", static_cast<int>(opts.subgraph.edges.size())}};
  const ProbeResult r =
      subgraph_probability_probe(opts.subgraph, opts.n, opts.trials, SeededRng(opts.seed), burnin, opts.workers);
  rep.summary = {{"exact", r.exact},
                 {"hits", r.hits},
                 {"trials", r.trials},
                 {"estimate", r.estimate()},
                 {"standard_error", r.standard_error()},
                 {"n_pow_minus_e", std::pow(static_cast<double>(opts.n), -static_cast<double>(opts.subgraph.edges.size()))}};
  rep.seconds = since(t0);
  return rep;
}

ExperimentReport cmd_absorber_demo(const AbsorberDemoOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "absorber-demo";
  rep.seed = opts.seed;
  const int batch = opts.instance ? 1 : opts.batch;
  if (opts.instance) rep.parameters = {{"instance", "file"}};
  else rep.parameters = {{"indices", opts.indices}, {"vertices", opts.vertices}, {"max_t", opts.max_t}, {"batch", batch}};

  const SeededRng master(opts.seed);
  std::uint64_t verified = 0, infeasible = 0, total_pairs = 0;
  std::string first_problem;
  for (int b = 0; b < batch; ++b) {
    SeededRng gen = master.derive(2 * static_cast<std::uint64_t>(b));
    SeededRng solve = master.derive(2 * static_cast<std::uint64_t>(b) + 1);
    const CorrectionInstance inst =
        opts.instance ? *opts.instance : random_correction_instance(opts.indices, opts.vertices, opts.max_t, gen);
    ojson rec{{"trial", b}};
    std::optional<std::string> stage_problem;
    CorrectionOptions copts;
    copts.observer = [&](CorrectionStage s, const DirectedColoredMultigraph& d) {
      if (stage_problem) return;
      if (auto err = check_net_degrees(inst, d)) stage_problem = std::string(to_string(s)) + ": " + *err;
    };
    try {
      const CorrectionSet c = decompose_corrections(inst, solve, copts);
      const CorrectionReport vr = verify_corrections(inst, c);
      const bool ok = vr.ok && !stage_problem;
      rec["pairs"] = c.pairs.size();
      rec["verified"] = ok;
      rec["net_degree_ok"] = !stage_problem.has_value();
      total_pairs += c.pairs.size();
      if (ok) {
        ++verified;
      } else if (first_problem.empty()) {
        first_problem = stage_problem ? *stage_problem
                                      : vr.violations.front().rule + " at index " +
                                            std::to_string(vr.violations.front().index + 1) + ", vertex " +
                                            std::to_string(vr.violations.front().vertex + 1);
      }
      if (opts.include_artifacts) {
        rec["instance"] = ojson::parse(instance_to_json(inst).dump());
        rec["corrections"] = ojson::parse(corrections_to_json(c).dump());
      }
    } catch (const InfeasibleError& e) {
      ++infeasible;
      rec["pairs"] = 0;
      rec["verified"] = false;
      rec["infeasible"] = e.what();
    }
    rep.trials.push_back(rec);
  }
  rep.summary = {{"instances", batch}, {"verified", verified}, {"infeasible", infeasible}, {"pairs", total_pairs}};
  if (verified + infeasible < static_cast<std::uint64_t>(batch)) {
    rep.exit_code = 3;
    rep.message = "verification failed: " + first_problem;
  } else if (infeasible > 0) {
    rep.exit_code = 2;
    rep.message = std::to_string(infeasible) + " instance(s) infeasible at this scale";
  } else {
    rep.message = "all " + std::to_string(batch) + " instance(s) verified";
  }
  rep.seconds = since(t0);
  return rep;
}

ExperimentReport cmd_connector_demo(const ConnectorDemoOptions& opts) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.command = "connector-demo";
  rep.seed = opts.seed;
  const int ell = connector_depth(opts.N, opts.spread);
  const int m = opts.m > 0 ? opts.m : 1 << ell;
  rep.parameters = {{"N", opts.N}, {"spread", opts.spread}, {"m", m}, {"stress_trials", opts.stress_trials}};
  ConnectorGraph K = build_connector(opts.N, m, opts.spread);
  const SeededRng master(opts.seed);
  SeededRng cert_rng = master.derive(0);
  const int certified = certify_connector(K, cert_rng, opts.stress_trials);

  SeededRng stress = master.derive(1);
  int routed = 0;
  std::string problem;
  for (int t = 0; t < opts.stress_trials; ++t) {
    const auto pairs = random_maximal_pairing(certified, stress);
    ojson rec{{"trial", t}, {"pairs", pairs.size()}};
    try {
      const auto paths = route_pairs(K, pairs);
      const auto err = check_routing(K, pairs, paths);
      std::size_t longest = 0;
      for (const auto& p : paths) longest = std::max(longest, p.size() - 1);
      rec["ok"] = !err;
      rec["longest"] = longest;
      if (!err) ++routed;
      else if (problem.empty()) problem = *err;
    } catch (const RoutingError& e) {
      rec["ok"] = false;
      rec["longest"] = 0;
      if (problem.empty()) problem = e.what();
    }
    rep.trials.push_back(rec);
  }
  rep.summary = {{"ell", K.ell},       {"width", K.width},       {"edges", K.num_edges()},
                 {"max_degree", K.max_degree()}, {"probed_m", K.probed_m}, {"certified_m", certified}, {"routed", routed}};
  if (opts.include_edges) rep.summary["graph"] = ojson::parse(connector_to_json(K).dump());
  if (K.max_degree() > 4 || routed < opts.stress_trials) {
    rep.exit_code = 3;
    rep.message = K.max_degree() > 4 ? "degree bound violated" : "stress routing failed: " + problem;
  } else {
    rep.message = "all " + std::to_string(routed) + " pairings at m = " + std::to_string(certified) + " routed";
  }
  rep.seconds = since(t0);
  return rep;
}

}  // namespace latdec
