#pragma once

// Square text format: a line holding n, then n lines of n space-separated
// symbols in [1, n]. Several squares in one stream are separated by blank
// lines. The decomposition format is an n x n grid (no order line) whose
// entry (r, c) is the 1-based index of the transversal containing the cell.

#include <iosfwd>
#include <string>
#include <vector>

#include "latdec/core.hpp"

namespace latdec::io {

void write_square(std::ostream& os, const LatinSquare& ls);
std::string square_to_string(const LatinSquare& ls);

/// Reads one square; throws InvalidInput on malformed text or a non-Latin grid.
LatinSquare read_square(std::istream& is);
/// Reads every square in the stream.
std::vector<LatinSquare> read_squares(std::istream& is);
LatinSquare read_square_file(const std::string& path);

void write_decomposition(std::ostream& os, int n, const Decomposition& dec);
/// Reads an n x n mate grid. Structural problems throw; whether the parts are
/// transversals is left to verify_decomposition.
Decomposition read_decomposition(std::istream& is, int n);

}  // namespace latdec::io
