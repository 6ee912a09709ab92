// latdec command line. Exit codes: 0 ok, 1 invalid input, 2 infeasible or
// undecided, 3 a checked claim failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "latdec/connector.hpp"
#include "latdec/experiments.hpp"
#include "latdec/io.hpp"
#include "latdec/sampler.hpp"
#include "latdec/transversal.hpp"

namespace {

using namespace latdec;

struct Global {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
  int workers = 0;
  std::uint64_t node_budget = 100'000'000;
};

void emit(const Global& g, const std::string& body) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InvalidInput("cannot write " + g.out);
  f << body;
}

int emit_report(const Global& g, const ExperimentReport& rep) {
  if (g.format == "json") emit(g, rep.to_json().dump(2) + "\n");
  else if (g.format == "csv") emit(g, rep.to_csv());
  else emit(g, rep.to_text());
  if (rep.exit_code != 0 && g.format != "text" && !rep.message.empty()) std::cerr << rep.message << '\n';
  return rep.exit_code;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::optional<std::uint64_t> opt_u64(std::int64_t v) {
  if (v < 0) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin squares, transversals and absorber gadgets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(LATDEC_VERSION));
  Global g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Write output here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--workers", g.workers, "Worker threads (0 = all)");
  app.add_option("--node-budget", g.node_budget, "Exact-cover node budget");

  std::function<int()> action;

  // sample
  int order = 0;
  std::int64_t burnin = -1, thin = -1;
  std::size_t count = 1;
  auto* sample = app.add_subcommand("sample", "Sample random Latin squares");
  sample->add_option("--order", order, "Order n")->required()->check(CLI::PositiveNumber);
  sample->add_option("--burnin", burnin, "Proper states visited before the first sample (default 10 n^3)");
  sample->add_option("--thin", thin, "Proper states between samples (default n^3)");
  sample->add_option("--count", count, "Number of squares");
  sample->callback([&] {
    action = [&] {
      SeededRng rng(g.seed);
      const auto squares = sample_many(order, rng, opt_u64(burnin).value_or(default_burnin(order)),
                                       opt_u64(thin).value_or(default_thin(order)), count);
      std::ostringstream os;
      for (std::size_t k = 0; k < squares.size(); ++k) {
        if (k) os << '\n';
        io::write_square(os, squares[k]);
      }
      emit(g, os.str());
      return 0;
    };
  });

  // count-transversals
  std::string square_file;
  bool serial = false;
  auto* ct = app.add_subcommand("count-transversals", "Count transversals of each square in a file");
  ct->add_option("square", square_file, "Square file")->required();
  ct->add_flag("--serial", serial, "Use the serial kernel");
  ct->callback([&] {
    action = [&] {
      std::ifstream f(square_file);
      if (!f) throw InvalidInput("cannot open " + square_file);
      std::ostringstream os;
      for (const auto& ls : io::read_squares(f))
        os << (serial ? count_transversals_serial(ls) : count_transversals_parallel(ls, g.workers)) << '\n';
      emit(g, os.str());
      return 0;
    };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Decompose a square into disjoint transversals");
  dec->add_option("square", square_file, "Square file")->required();
  dec->callback([&] {
    action = [&] {
      const LatinSquare ls = io::read_square_file(square_file);
      DecomposeOptions opts;
      opts.node_budget = g.node_budget;
      const DecomposeResult r = decompose(ls, opts);
      std::ostringstream os;
      if (g.format == "json") {
        nlohmann::json j{{"status", to_string(r.status)}, {"nodes", r.nodes}, {"lazy", r.lazy}};
        if (r.decomposition) {
          std::ostringstream grid;
          io::write_decomposition(grid, ls.order(), *r.decomposition);
          j["mate"] = grid.str();
        }
        os << j.dump(2) << '\n';
      } else {
        // status on stderr so the grid can go straight to `verify`
        std::cerr << to_string(r.status) << '\n';
        if (r.decomposition) io::write_decomposition(os, ls.order(), *r.decomposition);
      }
      emit(g, os.str());
      if (r.decomposition && !verify_decomposition(ls, *r.decomposition).ok) return 3;
      return r.status == SearchStatus::Undecided ? 2 : 0;
    };
  });

  // verify
  std::string mate_file;
  auto* ver = app.add_subcommand("verify", "Check a decomposition (mate grid) against a square");
  ver->add_option("square", square_file, "Square file")->required();
  ver->add_option("decomposition", mate_file, "Mate grid file")->required();
  ver->callback([&] {
    action = [&] {
      const LatinSquare ls = io::read_square_file(square_file);
      std::ifstream f(mate_file);
      if (!f) throw InvalidInput("cannot open " + mate_file);
      const VerifyReport rep = verify_decomposition(ls, io::read_decomposition(f, ls.order()));
      emit(g, (rep.ok ? std::string("ok") : "invalid: " + rep.message) + "\n");
      return rep.ok ? 0 : 3;
    };
  });

  // tarry-check
  TarryOptions tarry;
  auto* tc = app.add_subcommand("tarry-check", "Decompose every reduced square of a small order");
  tc->add_option("--order", tarry.n, "Order (at most 6)")->check(CLI::Range(1, 6));
  tc->add_flag("--cyclic-prefix", tarry.cyclic_prefix_only, "Only squares extending the cyclic first two rows");
  tc->callback([&] {
    action = [&] {
      tarry.node_budget = g.node_budget;
      tarry.workers = g.workers;
      return emit_report(g, cmd_tarry_check(tarry));
    };
  });

  // mc-decomposable
  McOptions mc;
  auto* mcc = app.add_subcommand("mc-decomposable", "Fraction of random squares that decompose");
  mcc->add_option("--order", mc.n, "Order n")->check(CLI::Range(2, 64));
  mcc->add_option("--trials", mc.trials, "Number of sampled squares")->check(CLI::NonNegativeNumber);
  mcc->add_option("--burnin", burnin, "Burn-in (default 10 n^3)");
  mcc->callback([&] {
    action = [&] {
      mc.seed = g.seed;
      mc.burnin = opt_u64(burnin);
      mc.node_budget = g.node_budget;
      mc.workers = g.workers;
      return emit_report(g, cmd_mc_decomposable(mc));
    };
  });

  // census-links
  CensusOptions census;
  auto* cl = app.add_subcommand("census-links", "L_k link counts or same-colour path-pair censuses");
  cl->add_option("--order", census.n, "Order n")->check(CLI::Range(2, 4096));
  auto* kopt = cl->add_option("--k", census.k, "Count L_k links")->check(CLI::PositiveNumber);
  auto* lopt = cl->add_option("--len", census.len, "Path-pair census of this odd length")->check(CLI::PositiveNumber);
  kopt->excludes(lopt);
  cl->add_option("--pairs", census.pairs, "Random endpoint tuples")->check(CLI::NonNegativeNumber);
  cl->add_option("--burnin", burnin, "Burn-in (default 10 n^3)");
  cl->callback([&] {
    action = [&] {
      census.seed = g.seed;
      census.burnin = opt_u64(burnin);
      census.workers = g.workers;
      return emit_report(g, cmd_census_links(census));
    };
  });

  // probe-subgraph
  ProbeOptions probe;
  std::string subgraph_file;
  auto* ps = app.add_subcommand("probe-subgraph", "Probability that a random square contains a coloured subgraph");
  ps->add_option("subgraph", subgraph_file, "Subgraph JSON {\"edges\": [[row, col, colour], ...]}")->required();
  ps->add_option("--order", probe.n, "Order n (4 is exact)")->check(CLI::Range(1, 256));
  ps->add_option("--trials", probe.trials, "Samples when not exact");
  ps->add_option("--burnin", burnin, "Burn-in (default 10 n^3)");
  ps->callback([&] {
    action = [&] {
      probe.subgraph = subgraph_from_json(read_json_file(subgraph_file));
      probe.seed = g.seed;
      probe.burnin = opt_u64(burnin);
      probe.workers = g.workers;
      return emit_report(g, cmd_probe_subgraph(probe));
    };
  });

  // absorber-demo
  AbsorberDemoOptions absorber;
  std::string instance_file;
  auto* ad = app.add_subcommand("absorber-demo", "Decompose correction requests into 2-cycles and verify");
  ad->add_option("--instance", instance_file, "Instance JSON (otherwise random instances)");
  ad->add_option("--indices", absorber.indices, "|I| for random instances");
  ad->add_option("--vertices", absorber.vertices, "|U| for random instances");
  ad->add_option("--max-t", absorber.max_t, "Largest |T_i|");
  ad->add_option("--batch", absorber.batch, "Number of random instances")->check(CLI::NonNegativeNumber);
  ad->callback([&] {
    action = [&] {
      if (!instance_file.empty()) absorber.instance = instance_from_json(read_json_file(instance_file));
      absorber.seed = g.seed;
      absorber.include_artifacts = g.format == "json";
      return emit_report(g, cmd_absorber_demo(absorber));
    };
  });

  // connector-demo
  ConnectorDemoOptions conn;
  auto* cd = app.add_subcommand("connector-demo", "Build a connector graph, certify and stress its routing");
  cd->add_option("--vertices", conn.N, "Ambient size N");
  cd->add_option("--spread", conn.spread, "Spread constant (>= 1)");
  cd->add_option("--roots", conn.m, "Root count (0 = level width)");
  cd->add_option("--stress-trials", conn.stress_trials, "Random maximal pairings per check");
  cd->add_flag("--edges", conn.include_edges, "Include the edge list in JSON output");
  cd->callback([&] {
    action = [&] {
      conn.seed = g.seed;
      return emit_report(g, cmd_connector_demo(conn));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 0;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const SearchRefused& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const RoutingError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
