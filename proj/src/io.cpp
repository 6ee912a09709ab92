#include "latdec/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace latdec::io {

namespace {

int read_int(std::istream& is, const char* what) {
  long long v = 0;
  if (!(is >> v)) throw InvalidInput(std::string("expected integer for ") + what);
  if (v < -1000000 || v > 1000000) throw InvalidInput(std::string("value out of range for ") + what);
  return static_cast<int>(v);
}

}  // namespace

void write_square(std::ostream& os, const LatinSquare& ls) {
  const int n = ls.order();
  os << n << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) os << (c ? " " : "") << ls.at(r, c) + 1;
    os << '\n';
  }
}

std::string square_to_string(const LatinSquare& ls) {
  std::ostringstream os;
  write_square(os, ls);
  return os.str();
}

LatinSquare read_square(std::istream& is) {
  const int n = read_int(is, "order");
  if (n < 1 || n > 4096) throw InvalidInput("order out of range: " + std::to_string(n));
  std::vector<int> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (auto& v : cells) v = read_int(is, "cell") - 1;
  return LatinSquare::from_flat(n, std::move(cells));
}

std::vector<LatinSquare> read_squares(std::istream& is) {
  std::vector<LatinSquare> out;
  while (true) {
    is >> std::ws;
    if (is.eof()) break;
    out.push_back(read_square(is));
  }
  return out;
}

LatinSquare read_square_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_square(in);
}

void write_decomposition(std::ostream& os, int n, const Decomposition& dec) {
  const auto mate = decomposition_to_mate(n, dec);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) os << (c ? " " : "") << mate[static_cast<std::size_t>(r * n + c)] + 1;
    os << '\n';
  }
}

Decomposition read_decomposition(std::istream& is, int n) {
  std::vector<int> mate(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (auto& v : mate) v = read_int(is, "mate cell") - 1;
  return mate_to_decomposition(n, mate);
}

}  // namespace latdec::io
