#pragma once

// Binary-tree connector: levels V(0)..V(l) of 2^l vertices each, where
// v(i,j) joins v(i+1, 2(j-1)+1) and v(i+1, 2(j-1)+2) (indices mod 2^l).
// Roots sit on level 0, and any pairing of roots can be routed along
// vertex-disjoint paths.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latdec/core.hpp"
#include "latdec/rng.hpp"

namespace latdec {

class RoutingError : public std::runtime_error {
 public:
  RoutingError(std::pair<int, int> pair, const std::string& what)
      : std::runtime_error(what), pair_(pair) {}
  std::pair<int, int> pair() const { return pair_; }

 private:
  std::pair<int, int> pair_;
};

struct ConnectorGraph {
  int N = 0;
  int m = 0;
  double spread = 1.0;
  int ell = 0;
  int width = 0;                       // 2^ell
  std::vector<std::vector<int>> adj;   // sorted neighbour lists on [0, N)
  int probed_m = 0;                    // largest count that passed the probe
  int certified_m = 0;                 // 0 until certify_connector runs

  /// Vertex v(i, j), 1 <= j <= width.
  int vertex(int level, int j) const { return level * width + (j - 1); }
  /// Level of a vertex, or -1 for the unused tail of [0, N).
  int level_of(int v) const { return v < (ell + 1) * width ? v / width : -1; }
  int root(int k) const { return vertex(0, k + 1); }  // k-th root, 0-based
  std::vector<int> roots() const;
  int max_degree() const;
  std::size_t num_edges() const;

  /// Indices of L(root, i): 2^i(j-1)+1 .. 2^i j, reduced into [1, width].
  std::vector<int> tree_level(int root_index, int level) const;
  /// Vertex set of F_v, level by level.
  std::vector<int> tree_vertices(int root_index) const;
};

/// Largest l with 2^l <= N / (spread * log2 N); throws InvalidInput unless
/// l >= 1, (l+1) 2^l <= N and m <= 2^l.
int connector_depth(int N, double spread);
ConnectorGraph build_connector(int N, int m, double spread);

inline constexpr int kRouteAttempts = 16;

/// One vertex-disjoint path per pair (pairs of 0-based root indices), routed
/// one at a time through the union of the two pruned trees. When a pair gets
/// stuck it is moved to the front and routing restarts, up to kRouteAttempts
/// orders. Throws RoutingError naming the pair that was stuck last.
std::vector<std::vector<int>> route_pairs(const ConnectorGraph& K,
                                          const std::vector<std::pair<int, int>>& pairs);

/// nullopt if paths are disjoint, connect their pairs, avoid roots inside,
/// follow edges and meet every level at most twice.
std::optional<std::string> check_routing(const ConnectorGraph& K,
                                         const std::vector<std::pair<int, int>>& pairs,
                                         const std::vector<std::vector<int>>& paths);

/// Random pairing of the first `count` roots covering all but at most one.
std::vector<std::pair<int, int>> random_maximal_pairing(int count, SeededRng& rng);

/// True if `trials` random maximal pairings of the first `count` roots all route.
bool routes_all(const ConnectorGraph& K, int count, int trials, SeededRng& rng);

/// Probes the largest count <= K.m for which routes_all holds (exponential
/// then binary search) into K.probed_m. Routing success falls off steeply
/// but not as a step, so the certified bound starts 20% below the probe
/// (once it reaches 10) and steps down until 10 * trials fresh pairings all
/// route. Stored in K.certified_m and returned.
int certify_connector(ConnectorGraph& K, SeededRng& rng, int trials = 100);

/// {"N", "m", "spread", "ell", "probed_m", "certified_m", "roots", "edges": [[u,v],...]}, 1-based.
nlohmann::json connector_to_json(const ConnectorGraph& K);
/// Plain "u v" lines, 1-based.
std::string connector_edge_list(const ConnectorGraph& K);

}  // namespace latdec
