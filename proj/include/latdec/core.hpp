#pragma once

// Latin squares and their two equivalent views: the optimal proper edge
// colouring of K_{n,n} and the 3-partite triple system.
//
// Indexing convention: everything in the C++ API is 0-based (rows, columns,
// symbols, colours, vertices). Text and JSON files are 1-based; the
// conversion happens only in io.hpp and the JSON helpers.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latdec {

/// Malformed input: a grid that is not Latin, a colouring that is not
/// proper, an out-of-range parameter.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

class LatinSquare {
 public:
  /// Validates `grid` (n rows of n symbols in [0, n)). Throws InvalidInput
  /// describing the first violation in row-major order.
  static LatinSquare from_grid(int n, const std::vector<std::vector<int>>& grid);
  static LatinSquare from_flat(int n, std::vector<int> cells);

  /// Cell (r, c) holds (r + c) mod n.
  static LatinSquare cyclic(int n);

  int order() const { return n_; }
  int at(int row, int col) const { return cells_[static_cast<std::size_t>(row * n_ + col)]; }
  int at(Cell cell) const { return at(cell.row, cell.col); }
  std::span<const int> row(int r) const {
    return {cells_.data() + static_cast<std::size_t>(r * n_), static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& flat() const { return cells_; }
  std::vector<std::vector<int>> grid() const;

  /// First row and first column in natural order.
  bool is_reduced() const;

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
  friend auto operator<=>(const LatinSquare& a, const LatinSquare& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.cells_ <=> b.cells_;
  }

 private:
  LatinSquare(int n, std::vector<int> cells) : n_(n), cells_(std::move(cells)) {}
  int n_ = 0;
  std::vector<int> cells_;
};

/// Returns a description of the first violation (row-major scan), or
/// nullopt if the flat grid is a Latin square of order n.
std::optional<std::string> find_latin_violation(int n, std::span<const int> cells);

// ---------------------------------------------------------------------------
// Bipartite colouring view. Vertices of K_{n,n}: row vertices A = [0, n),
// column vertices B = [n, 2n).

using Vertex = int;

enum class Side : std::uint8_t { A, B };

inline Side side_of(Vertex v, int n) { return v < n ? Side::A : Side::B; }
inline Vertex row_vertex(int row) { return row; }
inline Vertex col_vertex(int col, int n) { return n + col; }
/// The u ~_{A/B} v relation: both endpoints on the same side.
inline bool same_side(Vertex u, Vertex v, int n) { return side_of(u, n) == side_of(v, n); }

/// An edge of K_{n,n} as (row, column).
struct Edge {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ProperColoring {
 public:
  /// Throws InvalidInput unless `colors` (row-major n*n, values in [0, n))
  /// is proper and every colour is used exactly n times.
  static ProperColoring from_matrix(int n, std::vector<int> colors);

  int order() const { return n_; }
  int color(int a, int b) const { return colors_[static_cast<std::size_t>(a * n_ + b)]; }
  int color(Edge e) const { return color(e.a, e.b); }
  /// Colour of the edge between two vertices on opposite sides.
  int color_between(Vertex u, Vertex v) const;
  /// The unique neighbour of `v` whose connecting edge has colour `c`.
  Vertex neighbour_with_color(Vertex v, int c) const {
    return v < n_ ? n_ + col_of_[static_cast<std::size_t>(v * n_ + c)]
                  : row_of_[static_cast<std::size_t>((v - n_) * n_ + c)];
  }
  /// The colour class of `c` as a perfect matching, sorted by row.
  std::vector<Edge> color_class(int c) const;
  const std::vector<int>& matrix() const { return colors_; }

  friend bool operator==(const ProperColoring& x, const ProperColoring& y) {
    return x.n_ == y.n_ && x.colors_ == y.colors_;
  }

 private:
  ProperColoring(int n, std::vector<int> colors);
  int n_ = 0;
  std::vector<int> colors_;
  std::vector<int> col_of_;  // [a*n + c] -> b
  std::vector<int> row_of_;  // [b*n + c] -> a
};

ProperColoring to_coloring(const LatinSquare& ls);
LatinSquare from_coloring(const ProperColoring& col);

/// True iff `edges` is a perfect matching of K_{n,n} with all colours distinct.
bool is_rainbow_perfect_matching(const ProperColoring& col, std::span<const Edge> edges);

// ---------------------------------------------------------------------------

struct Triple {
  int a = 0;
  int b = 0;
  int c = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleSystem {
  int n = 0;
  std::vector<Triple> triples;
};

TripleSystem to_triple_system(const LatinSquare& ls);
/// Checks n^2 triples with every cross-class pair covered exactly once.
std::optional<std::string> check_triple_system(const TripleSystem& ts);
/// True iff `triples` is a perfect matching of the 3-partite hypergraph.
bool is_hypergraph_perfect_matching(int n, std::span<const Triple> triples);

// ---------------------------------------------------------------------------

/// n cells, one per row, per column and per symbol. Cells are kept sorted by row.
struct Transversal {
  std::vector<Cell> cells;
  friend auto operator<=>(const Transversal&, const Transversal&) = default;
};

/// k <= n cells with distinct rows, columns and symbols.
struct PartialTransversal {
  std::vector<Cell> cells;
  std::size_t size() const { return cells.size(); }
};

struct Decomposition {
  std::vector<Transversal> parts;
};

/// nullopt if `cells` (any length) has distinct rows, columns and symbols
/// and lies inside the square; otherwise the first problem found.
std::optional<std::string> check_partial_transversal(const LatinSquare& ls,
                                                     std::span<const Cell> cells);
bool is_transversal(const LatinSquare& ls, std::span<const Cell> cells);

/// Edge set of K_{n,n} corresponding to a set of cells.
std::vector<Edge> cells_to_edges(std::span<const Cell> cells);

struct VerifyReport {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// True iff `dec` holds n pairwise cell-disjoint transversals of `ls` covering
/// every cell. The report names the first violation. Never throws.
VerifyReport verify_decomposition(const LatinSquare& ls, const Decomposition& dec);

/// Shifted diagonals of the cyclic square; n must be odd.
Decomposition cyclic_decomposition(int n);

/// The orthogonal-mate grid: cell (r, c) holds the index of the part
/// containing it. Requires a valid decomposition.
std::vector<int> decomposition_to_mate(int n, const Decomposition& dec);
/// Inverse of decomposition_to_mate. Throws InvalidInput if some index in
/// [0, n) is missing or the grid has the wrong size.
Decomposition mate_to_decomposition(int n, std::span<const int> mate);

/// The triple partition induced by a decomposition.
std::vector<std::vector<Triple>> decomposition_to_triple_partition(const LatinSquare& ls,
                                                                   const Decomposition& dec);

}  // namespace latdec
