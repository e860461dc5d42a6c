#pragma once

#include <vector>

#include "gqc/rational.hpp"

namespace gqc {

using RatMatrix = std::vector<std::vector<Rat>>;

// Rank over Q via fraction-free (Bareiss) elimination on denominator-cleared
// rows; exact for any input.
int exact_rank(const RatMatrix& m);

// Indices of a maximal linearly independent subset of rows, scanning in row
// order (exact rational elimination).
std::vector<int> row_basis_indices(const RatMatrix& m);

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& x);
std::vector<Rat> mat_transpose_vec(const RatMatrix& m, const std::vector<Rat>& y);
Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);

// Solves a square system exactly; throws when singular.
std::vector<Rat> solve_linear_system(RatMatrix a, std::vector<Rat> b);

}  // namespace gqc
