#pragma once

// Colour patterns and their embeddings ("links") in an optimally coloured
// K_{n,n}; same-colour path-pair censuses; fixed-subgraph probabilities.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdec/core.hpp"
#include "latdec/rng.hpp"

namespace latdec {

struct PatternEdge {
  int u = 0;
  int v = 0;
  int cls = 0;  // colour-class index, >= 1
};

/// A template graph H with designated start/end vertices and a colour-class
/// label on every edge.
struct Pattern {
  int num_vertices = 0;
  std::vector<PatternEdge> edges;
  int start = 0;
  int end = 1;

  /// Throws InvalidInput on self-loops, repeated edges, out-of-range
  /// vertices, non-positive classes or start == end.
  void validate() const;
};

/// Path start = w_0, ..., w_{2k} = end whose t-th edge (1-based) has class
/// ((t-1) mod k) + 1: k distinct classes that then repeat in order.
Pattern make_repeat_pattern(int k);

/// ψ: pattern vertex -> host vertex.
struct Link {
  std::vector<Vertex> embedding;
};

/// nullopt if `link` is injective, edge-preserving and colour-consistent
/// (one colour per class, distinct across classes) with the right endpoints.
std::optional<std::string> check_link(const ProperColoring& host, const Pattern& pat,
                                      const Link& link, Vertex u, Vertex v);

/// Every (u, v, pat)-link exactly once, in a fixed deterministic order.
/// Mismatched endpoint sides give nothing rather than an error. `visit`
/// returns false to stop.
void for_each_link(const ProperColoring& host, Vertex u, Vertex v, const Pattern& pat,
                   const std::function<bool(std::span<const Vertex>)>& visit);

std::vector<Link> enumerate_links(const ProperColoring& host, Vertex u, Vertex v,
                                  const Pattern& pat, std::optional<std::size_t> limit = std::nullopt);

/// 64-bit count that sticks at the maximum and raises `overflow` instead of wrapping.
struct SaturatingCount {
  std::uint64_t value = 0;
  bool overflow = false;

  void add(std::uint64_t x);
  friend bool operator==(const SaturatingCount&, const SaturatingCount&) = default;
};

SaturatingCount count_links(const ProperColoring& host, Vertex u, Vertex v, const Pattern& pat);

/// Number of closed 2-coloured alternating 4-walks u-w1-w2-w3-u (colours
/// a, b, a, b with a != b); the complement of the L_2 link count at u.
std::uint64_t closed_alternating_walks(const ProperColoring& host, Vertex u);

struct PathPairQuery {
  int length = 3;
  Vertex x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

struct CensusResult {
  PathPairQuery query;
  SaturatingCount count;
  double seconds = 0.0;
};

/// Ordered pairs (P1, P2) of vertex-disjoint paths of the given odd length,
/// P1 from x1 to y1 and P2 from x2 to y2, with equal colour sequences.
/// Invalid endpoints (not distinct, or a pair on one side) count zero.
CensusResult census_path_pairs(const ProperColoring& host, const PathPairQuery& q);

// ---------------------------------------------------------------------------

/// A small edge-coloured bipartite graph on row/column labels, to be found
/// at the same cells with the same colours.
struct ColoredSubgraph {
  std::vector<std::pair<Cell, int>> edges;  // (row, column) -> colour

  /// Throws InvalidInput if two edges at one vertex share a colour or one
  /// cell is listed twice.
  void validate(int n) const;
  bool contained_in(const LatinSquare& ls) const;
};

struct ProbeResult {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  bool exact = false;  // hits/trials is the exact probability
  double estimate() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
  double standard_error() const;
};

/// Exact probability over all Latin squares of order n (n <= 5).
ProbeResult probe_exact(const ColoredSubgraph& h, int n);
/// Fraction of `trials` independent samples containing h. Trial t uses
/// stream t of `rng`; the result does not depend on `workers`.
ProbeResult probe_sampled(const ColoredSubgraph& h, int n, std::uint64_t trials,
                          const SeededRng& rng, std::uint64_t burnin, int workers = 0);
/// Exact mode at n = 4, sampled otherwise.
ProbeResult subgraph_probability_probe(const ColoredSubgraph& h, int n, std::uint64_t trials,
                                       const SeededRng& rng, std::uint64_t burnin, int workers = 0);

// ---------------------------------------------------------------------------
// Pattern file: {"vertices": V, "edges": [[a,b,class],...], "start": s, "end": t}
// with 1-based vertices.

nlohmann::json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const nlohmann::json& j);

/// Subgraph file: {"edges": [[row, col, colour], ...]}, 1-based.
ColoredSubgraph subgraph_from_json(const nlohmann::json& j);

}  // namespace latdec
