#pragma once

// Correction requests between near-matchings, decomposed into coloured
// directed 2-cycles (each 2-cycle is one switch request).

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdec/rainbow.hpp"
#include "latdec/rng.hpp"

namespace latdec {

/// Indices I = [0, num_indices), ground set U = [0, num_vertices).
/// For every index i: R'_i ⊆ R_i, R_i ∩ T_i = ∅, |R'_i| = |T_i|, and the
/// R'_i jointly equal the T_i as multisets. Sets are kept sorted.
struct CorrectionInstance {
  int num_indices = 0;
  int num_vertices = 0;
  std::vector<std::vector<int>> R, T, Rp;

  /// nullopt when the invariants hold.
  std::optional<std::string> check() const;
  /// Sorts every set, then throws InvalidInput if check() fails.
  void normalize();

  bool in_R(int i, int u) const;
  bool in_T(int i, int u) const;
  bool in_Rp(int i, int u) const;
};

/// Output of the decomposition: request pairs {(i,u),(j,v)}.
using CorrectionSet = SwitchRequestSet;

struct ColoredArc {
  int tail = 0;
  int head = 0;
  int color = 0;
  friend auto operator<=>(const ColoredArc&, const ColoredArc&) = default;
};

/// Intermediate coloured multi-digraph on U.
struct DirectedColoredMultigraph {
  int num_vertices = 0;
  std::vector<ColoredArc> arcs;

  /// out - in in colour i at u.
  int net_degree(int i, int u) const;
};

enum class CorrectionStage { Matchings = 1, Cycles, RainbowRepair, Triangulation, Gadgets, Pairs };
const char* to_string(CorrectionStage s);

/// A greedy stage ran out of candidates on every retry. Not an input error.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(CorrectionStage stage, const std::string& what)
      : std::runtime_error(std::string("infeasible at this scale (") + to_string(stage) + "): " + what),
        stage_(stage) {}
  CorrectionStage stage() const { return stage_; }

 private:
  CorrectionStage stage_;
};

struct CorrectionOptions {
  /// Max vertices carrying a chord of any one colour; 0 means max(8, 2·max|T_i|).
  int chord_usage_cap = 0;
  /// Extra randomized attempts after the lexicographic one.
  int retries = 32;
  /// Reject unless |U \ (R_i ∪ T_i)| >= factor · Σ|T_j| / |I| for every i. 0 disables.
  double feasibility_factor = 0.0;
  /// Called with the multigraph after every stage that changes it.
  std::function<void(CorrectionStage, const DirectedColoredMultigraph&)> observer;
};

CorrectionSet decompose_corrections(const CorrectionInstance& inst, SeededRng& rng,
                                    const CorrectionOptions& opts = {});

/// Expected net degree: +1 on T_i, -1 on R'_i, 0 elsewhere. nullopt if D matches.
std::optional<std::string> check_net_degrees(const CorrectionInstance& inst,
                                             const DirectedColoredMultigraph& d);

struct CorrectionViolation {
  std::string rule;  // "A1-1".."A1-4", "membership"
  int index = -1;
  int vertex = -1;
};

struct CorrectionReport {
  bool ok = true;
  std::vector<CorrectionViolation> violations;
  explicit operator bool() const { return ok; }
};

CorrectionReport verify_corrections(const CorrectionInstance& inst, const CorrectionSet& c);

/// A valid instance: |T_i| uniform in [0, max_t], R'_i a random rearrangement
/// of the T multiset, R_i = R'_i plus up to max_t extra vertices.
CorrectionInstance random_correction_instance(int num_indices, int num_vertices, int max_t,
                                              SeededRng& rng);

// JSON, 1-based: {"indices": m, "vertices": N, "R": [[...]], "T": [[...]], "R_prime": [[...]]}
// and {"pairs": [[[i,u],[j,v]], ...]}.
nlohmann::json instance_to_json(const CorrectionInstance& inst);
CorrectionInstance instance_from_json(const nlohmann::json& j);
nlohmann::json corrections_to_json(const CorrectionSet& c);
CorrectionSet corrections_from_json(const nlohmann::json& j);

}  // namespace latdec
