#pragma once

// Batch experiments behind the CLI. Each returns a report whose per-trial
// records depend only on (parameters, seed); worker count never changes them.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "latdec/absorber.hpp"
#include "latdec/links.hpp"

namespace latdec {

inline constexpr int kReportSchemaVersion = 1;

using ojson = nlohmann::ordered_json;

struct ExperimentReport {
  std::string command;
  ojson parameters = ojson::object();
  std::uint64_t seed = 0;
  ojson trials = ojson::array();   // per-trial records (flat objects)
  ojson summary = ojson::object();
  double seconds = 0.0;
  /// 0 ok, 2 infeasible/undecided-dominated, 3 a reproduced claim failed.
  int exit_code = 0;
  std::string message;             // human-readable verdict

  ojson to_json() const;
  std::string to_text() const;
  /// Header from the first record's keys, one row per trial.
  std::string to_csv() const;
};

struct TarryOptions {
  int n = 6;
  /// Only squares whose first two rows match the cyclic square's.
  bool cyclic_prefix_only = false;
  std::uint64_t node_budget = 100'000'000;
  int workers = 0;
};
ExperimentReport cmd_tarry_check(const TarryOptions& opts = {});

struct McOptions {
  int n = 10;
  int trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> burnin;  // default 10 n^3
  std::uint64_t node_budget = 100'000'000;
  int workers = 0;
};
ExperimentReport cmd_mc_decomposable(const McOptions& opts);

struct CensusOptions {
  int n = 20;
  int k = 0;    // L_k link counts when > 0
  int len = 0;  // path-pair census when > 0 (odd)
  int pairs = 10;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> burnin;
  int workers = 0;
};
ExperimentReport cmd_census_links(const CensusOptions& opts);

struct ProbeOptions {
  ColoredSubgraph subgraph;
  int n = 4;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> burnin;
  int workers = 0;
};
ExperimentReport cmd_probe_subgraph(const ProbeOptions& opts);

struct AbsorberDemoOptions {
  std::optional<CorrectionInstance> instance;  // else random instances
  int indices = 20;
  int vertices = 400;
  int max_t = 3;
  int batch = 1;
  std::uint64_t seed = 1;
  bool include_artifacts = true;  // instance and pairs JSON per trial
};
ExperimentReport cmd_absorber_demo(const AbsorberDemoOptions& opts);

struct ConnectorDemoOptions {
  int N = 4096;
  double spread = 1.0;
  int m = 0;            // 0: full level width
  int stress_trials = 100;
  std::uint64_t seed = 1;
  bool include_edges = false;
};
ExperimentReport cmd_connector_demo(const ConnectorDemoOptions& opts);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials);

}  // namespace latdec
