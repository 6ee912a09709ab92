#include "latdec/core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace latdec {

namespace {

std::string cell_name(int r, int c) {
  std::ostringstream os;
  os << "(" << r + 1 << "," << c + 1 << ")";
  return os.str();
}

}  // namespace

std::optional<std::string> find_latin_violation(int n, std::span<const int> cells) {
  if (n < 1) return "order must be positive";
  if (std::cmp_not_equal(cells.size(), n * n)) {
    return "grid must have " + std::to_string(n * n) + " cells, got " +
           std::to_string(cells.size());
  }
  // row_seen[r*n + s] / col_seen[c*n + s] hold 1 + the first column/row where s appeared.
  std::vector<int> row_seen(cells.size(), 0);
  std::vector<int> col_seen(cells.size(), 0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int s = cells[r * n + c];
      if (s < 0 || s >= n) {
        return "cell " + cell_name(r, c) + " holds symbol " + std::to_string(s + 1) +
               " outside [1," + std::to_string(n) + "]";
      }
      int& rs = row_seen[r * n + s];
      if (rs != 0) {
        return "symbol " + std::to_string(s + 1) + " repeated in row " + std::to_string(r + 1) +
               " at cell " + cell_name(r, c) + " (first at column " + std::to_string(rs) + ")";
      }
      rs = c + 1;
      int& cs = col_seen[c * n + s];
      if (cs != 0) {
        return "symbol " + std::to_string(s + 1) + " repeated in column " +
               std::to_string(c + 1) + " at cell " + cell_name(r, c) + " (first at row " +
               std::to_string(cs) + ")";
      }
      cs = r + 1;
    }
  }
  return std::nullopt;
}

LatinSquare LatinSquare::from_flat(int n, std::vector<int> cells) {
  if (auto err = find_latin_violation(n, cells)) throw InvalidInput("not a Latin square: " + *err);
  return LatinSquare(n, std::move(cells));
}

LatinSquare LatinSquare::from_grid(int n, const std::vector<std::vector<int>>& grid) {
  if (static_cast<int>(grid.size()) != n) {
    throw InvalidInput("not a Latin square: expected " + std::to_string(n) + " rows, got " +
                       std::to_string(grid.size()));
  }
  std::vector<int> flat;
  flat.reserve(n * n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(grid[r].size()) != n) {
      throw InvalidInput("not a Latin square: row " + std::to_string(r + 1) + " has " +
                         std::to_string(grid[r].size()) + " entries");
    }
    flat.insert(flat.end(), grid[r].begin(),
                grid[r].end());
  }
  return from_flat(n, std::move(flat));
}

LatinSquare LatinSquare::cyclic(int n) {
  if (n < 1) throw InvalidInput("order must be positive");
  std::vector<int> cells(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) cells[r * n + c] = (r + c) % n;
  return LatinSquare(n, std::move(cells));
}

std::vector<std::vector<int>> LatinSquare::grid() const {
  std::vector<std::vector<int>> g(n_);
  for (int r = 0; r < n_; ++r) g[r].assign(row(r).begin(), row(r).end());
  return g;
}

bool LatinSquare::is_reduced() const {
  for (int i = 0; i < n_; ++i) {
    if (at(0, i) != i || at(i, 0) != i) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ProperColoring::ProperColoring(int n, std::vector<int> colors)
    : n_(n), colors_(std::move(colors)) {
  col_of_.assign(colors_.size(), -1);
  row_of_.assign(colors_.size(), -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      const int c = color(a, b);
      col_of_[a * n_ + c] = b;
      row_of_[b * n_ + c] = a;
    }
  }
}

ProperColoring ProperColoring::from_matrix(int n, std::vector<int> colors) {
  if (n < 1) throw InvalidInput("order must be positive");
  if (std::cmp_not_equal(colors.size(), n * n))
    throw InvalidInput("colour matrix must have n*n entries");
  std::vector<int> uses(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = colors[a * n + b];
      if (c < 0 || c >= n) {
        throw InvalidInput("edge " + cell_name(a, b) + " has colour " + std::to_string(c + 1) +
                           " outside [1," + std::to_string(n) + "]");
      }
      if (++uses[c] > n) {
        throw InvalidInput("colour " + std::to_string(c + 1) + " used more than " +
                           std::to_string(n) + " times (not optimal)");
      }
    }
  }
  // With every colour used at most n times, properness is exactly the Latin property.
  if (auto err = find_latin_violation(n, colors)) {
    throw InvalidInput("colouring is not proper: " + *err);
  }
  return ProperColoring(n, std::move(colors));
}

int ProperColoring::color_between(Vertex u, Vertex v) const {
  if (same_side(u, v, n_)) throw InvalidInput("no edge between vertices on the same side");
  return u < n_ ? color(u, v - n_) : color(v, u - n_);
}

std::vector<Edge> ProperColoring::color_class(int c) const {
  std::vector<Edge> out;
  out.reserve(n_);
  for (int a = 0; a < n_; ++a) out.push_back({a, col_of_[a * n_ + c]});
  return out;
}

ProperColoring to_coloring(const LatinSquare& ls) {
  return ProperColoring::from_matrix(ls.order(), ls.flat());
}

LatinSquare from_coloring(const ProperColoring& col) {
  return LatinSquare::from_flat(col.order(), col.matrix());
}

bool is_rainbow_perfect_matching(const ProperColoring& col, std::span<const Edge> edges) {
  const int n = col.order();
  if (static_cast<int>(edges.size()) != n) return false;
  std::vector<char> a_used(n, 0), b_used(a_used), c_used(a_used);
  for (const Edge& e : edges) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) return false;
    const int c = col.color(e);
    if (a_used[e.a]++ || b_used[e.b]++ ||
        c_used[c]++) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

TripleSystem to_triple_system(const LatinSquare& ls) {
  TripleSystem ts{ls.order(), {}};
  ts.triples.reserve(ls.flat().size());
  for (int a = 0; a < ls.order(); ++a)
    for (int b = 0; b < ls.order(); ++b) ts.triples.push_back({a, b, ls.at(a, b)});
  return ts;
}

std::optional<std::string> check_triple_system(const TripleSystem& ts) {
  const int n = ts.n;
  if (n < 1) return "order must be positive";
  if (std::cmp_not_equal(ts.triples.size(), n * n)) return "expected n^2 triples";
  const auto nn = n * n;
  std::vector<int> ab(nn, 0), ac(nn, 0), bc(nn, 0);
  for (const Triple& t : ts.triples) {
    if (t.a < 0 || t.a >= n || t.b < 0 || t.b >= n || t.c < 0 || t.c >= n)
      return "triple element out of range";
    if (ab[t.a * n + t.b]++) return "pair (a,b) covered twice";
    if (ac[t.a * n + t.c]++) return "pair (a,c) covered twice";
    if (bc[t.b * n + t.c]++) return "pair (b,c) covered twice";
  }
  // n^2 triples with no pair covered twice cover every pair exactly once.
  return std::nullopt;
}

bool is_hypergraph_perfect_matching(int n, std::span<const Triple> triples) {
  if (static_cast<int>(triples.size()) != n) return false;
  std::vector<char> a(n, 0), b(a), c(a);
  for (const Triple& t : triples) {
    if (a[t.a]++ || b[t.b]++ ||
        c[t.c]++)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::optional<std::string> check_partial_transversal(const LatinSquare& ls,
                                                     std::span<const Cell> cells) {
  const int n = ls.order();
  std::vector<char> rows(n, 0), cols(rows), syms(rows);
  for (const Cell& cell : cells) {
    if (cell.row < 0 || cell.row >= n || cell.col < 0 || cell.col >= n)
      return "cell " + cell_name(cell.row, cell.col) + " outside the square";
    if (rows[cell.row]++)
      return "row " + std::to_string(cell.row + 1) + " used twice";
    if (cols[cell.col]++)
      return "column " + std::to_string(cell.col + 1) + " used twice";
    if (syms[ls.at(cell)]++)
      return "symbol " + std::to_string(ls.at(cell) + 1) + " used twice";
  }
  return std::nullopt;
}

bool is_transversal(const LatinSquare& ls, std::span<const Cell> cells) {
  return static_cast<int>(cells.size()) == ls.order() && !check_partial_transversal(ls, cells);
}

std::vector<Edge> cells_to_edges(std::span<const Cell> cells) {
  std::vector<Edge> edges;
  edges.reserve(cells.size());
  for (const Cell& c : cells) edges.push_back({c.row, c.col});
  return edges;
}

VerifyReport verify_decomposition(const LatinSquare& ls, const Decomposition& dec) {
  const int n = ls.order();
  if (static_cast<int>(dec.parts.size()) != n) {
    return {false, "expected " + std::to_string(n) + " parts, got " +
                       std::to_string(dec.parts.size())};
  }
  std::vector<int> owner(n * n, -1);
  for (int t = 0; t < n; ++t) {
    const auto& cells = dec.parts[t].cells;
    if (static_cast<int>(cells.size()) != n) {
      return {false, "part " + std::to_string(t + 1) + " has " + std::to_string(cells.size()) +
                         " cells"};
    }
    if (auto err = check_partial_transversal(ls, cells)) {
      return {false, "part " + std::to_string(t + 1) + " is not a transversal: " + *err};
    }
    for (const Cell& cell : cells) {
      int& o = owner[cell.row * n + cell.col];
      if (o >= 0) {
        return {false, "cell covered twice: " + cell_name(cell.row, cell.col) + " in parts " +
                           std::to_string(o + 1) + " and " + std::to_string(t + 1)};
      }
      o = t;
    }
  }
  // n parts of n distinct cells each cover all n^2 cells.
  return {true, "ok"};
}

Decomposition cyclic_decomposition(int n) {
  if (n < 1 || n % 2 == 0) {
    throw InvalidInput("cyclic decomposition needs odd order, got " + std::to_string(n));
  }
  Decomposition dec;
  dec.parts.resize(n);
  for (int t = 0; t < n; ++t) {
    auto& cells = dec.parts[t].cells;
    for (int r = 0; r < n; ++r) cells.push_back({r, (r + t) % n});
  }
  return dec;
}

std::vector<int> decomposition_to_mate(int n, const Decomposition& dec) {
  std::vector<int> mate(n * n, -1);
  for (std::size_t t = 0; t < dec.parts.size(); ++t)
    for (const Cell& c : dec.parts[t].cells)
      mate[c.row * n + c.col] = static_cast<int>(t);
  return mate;
}

Decomposition mate_to_decomposition(int n, std::span<const int> mate) {
  if (std::cmp_not_equal(mate.size(), n * n))
    throw InvalidInput("mate grid must have n*n entries");
  Decomposition dec;
  dec.parts.resize(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int t = mate[r * n + c];
      if (t < 0 || t >= n) {
        throw InvalidInput("mate grid entry at " + cell_name(r, c) + " outside [1," +
                           std::to_string(n) + "]");
      }
      dec.parts[t].cells.push_back({r, c});
    }
  }
  return dec;
}

std::vector<std::vector<Triple>> decomposition_to_triple_partition(const LatinSquare& ls,
                                                                   const Decomposition& dec) {
  std::vector<std::vector<Triple>> out;
  for (const auto& part : dec.parts) {
    auto& cls = out.emplace_back();
    for (const Cell& c : part.cells) cls.push_back({c.row, c.col, ls.at(c)});
  }
  return out;
}

}  // namespace latdec
