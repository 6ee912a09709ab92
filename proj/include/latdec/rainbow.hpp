#pragma once

// Edge-disjoint rainbow near-matchings in an optimally coloured K_{n,n},
// and the switcher gadget that moves one unit of degree between two of them.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdec/core.hpp"

namespace latdec {

struct ColoredEdge {
  int a = 0;  // row
  int b = 0;  // column
  int color = 0;
  friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

/// M_1..M_m with exception sets: every vertex of R_i has degree 0 in M_i,
/// every vertex of T_i has degree 2, every other vertex degree at most 1.
/// Edges are kept sorted; equality is structural.
struct NearMatchingFamily {
  ProperColoring base;
  std::vector<std::vector<ColoredEdge>> matchings;
  std::vector<std::vector<Vertex>> R;
  std::vector<std::vector<Vertex>> T;

  int order() const { return base.order(); }
  int size() const { return static_cast<int>(matchings.size()); }

  /// Builds a family from (row, column) edge lists, filling in colours and
  /// sorting. R and T default to empty sets.
  static NearMatchingFamily make(const ProperColoring& base,
                                 const std::vector<std::vector<Edge>>& matchings,
                                 std::vector<std::vector<Vertex>> R = {},
                                 std::vector<std::vector<Vertex>> T = {});

  int degree(int i, Vertex v) const;

  friend bool operator==(const NearMatchingFamily&, const NearMatchingFamily&) = default;
};

struct FamilyViolation {
  int index = -1;     // matching, -1 for family-wide problems
  Vertex vertex = -1; // -1 when not about a vertex
  std::string what;
};

struct FamilyReport {
  bool ok = true;
  std::vector<FamilyViolation> violations;
  explicit operator bool() const { return ok; }
};

/// Checks colours against the base, edge-disjointness, rainbowness, the
/// R/T degree rules and R_i ∩ T_i = ∅. Lists every violation.
FamilyReport check_near_matching(const NearMatchingFamily& fam);

/// An even x,y-path whose odd edges lie in M_i and even edges in M_j, the two
/// halves rainbow with equal colour sets. `path` lists the 2s+1 vertices.
struct Switcher {
  int i = 0;
  int j = 0;
  std::vector<Vertex> path;

  Vertex x() const { return path.front(); }
  Vertex y() const { return path.back(); }
  int length() const { return static_cast<int>(path.size()) - 1; }
  std::vector<ColoredEdge> odd_edges(const ProperColoring& base) const;
  std::vector<ColoredEdge> even_edges(const ProperColoring& base) const;

  friend bool operator==(const Switcher&, const Switcher&) = default;
};

/// Shortest admissible switcher length. Length 2 is impossible in a proper
/// colouring; so is 4 (e2 and e3 would need the same colour), so searches
/// produce nothing shorter than 6.
inline constexpr int kMinSwitcherLength = 4;

/// nullopt if `sw` is a valid switcher in `fam`, else the first problem.
std::optional<std::string> check_switcher(const NearMatchingFamily& fam, const Switcher& sw);

/// Iterative deepening over lengths 4, 6, ..., max_len; the first switcher
/// in (length, lexicographic vertex sequence) order. Throws InvalidInput for
/// bad indices, x == y, or x and y on different sides.
std::optional<Switcher> find_switcher(const NearMatchingFamily& fam, int i, int j, Vertex x,
                                      Vertex y, int max_len);

/// M_i' = (M_i \ odd) ∪ even, M_j' = (M_j \ even) ∪ odd. R and T are carried
/// over unchanged. Throws InvalidInput if `sw` does not validate against fam.
NearMatchingFamily apply_switcher(const NearMatchingFamily& fam, const Switcher& sw);

/// The same path with i and j exchanged; it undoes `sw` after apply_switcher.
Switcher transposed(const Switcher& sw);

/// Checks everything apply_switcher guarantees about (before, after).
std::optional<std::string> check_switch_postconditions(const NearMatchingFamily& before,
                                                       const NearMatchingFamily& after,
                                                       const Switcher& sw);

// ---------------------------------------------------------------------------
// Switch requests {(i,u),(j,v)}: u loses a unit of degree in matching i and
// gains one in j, v the reverse. As a coloured digraph: u->v in colour i and
// v->u in colour j.

struct IndexedVertex {
  int index = 0;
  int vertex = 0;
  friend auto operator<=>(const IndexedVertex&, const IndexedVertex&) = default;
};

struct SwitchPair {
  IndexedVertex first;
  IndexedVertex second;
  /// The same unordered pair with the smaller element first.
  SwitchPair normalized() const;
  friend auto operator<=>(const SwitchPair&, const SwitchPair&) = default;
};

struct SwitchRequestSet {
  std::vector<SwitchPair> pairs;
};

/// Per (index, vertex) out/in counts of the digraph view.
class RequestDegrees {
 public:
  explicit RequestDegrees(const SwitchRequestSet& set);
  int out(int i, int u) const;
  int in(int i, int u) const;

 private:
  std::vector<std::pair<IndexedVertex, std::pair<int, int>>> table_;  // sorted
};

/// (i,u) has exactly one outgoing and one incoming request, or neither.
bool is_le1_balanced(const SwitchRequestSet& set, int i, int u);

// ---------------------------------------------------------------------------
// JSON: {"n", "m", "colors": n x n grid, "matchings": [[[a,b],...],...],
// "R": [[v,...],...], "T": [[v,...],...]}, all 1-based; vertex ids are
// 1..n for rows and n+1..2n for columns.

nlohmann::json family_to_json(const NearMatchingFamily& fam);
NearMatchingFamily family_from_json(const nlohmann::json& j);

}  // namespace latdec
