#pragma once

#include <optional>
#include <vector>

#include "npp/rational.hpp"

namespace npp {

using Matrix = std::vector<std::vector<Rational>>;

/// Row rank by fraction-free-ish Gaussian elimination (exact).
std::size_t matrix_rank(Matrix m);

/// Solves A x = b exactly if A (given by rows) has full column rank and the
/// system is consistent; returns nullopt otherwise.
std::optional<std::vector<Rational>> solve_exact(Matrix a, std::vector<Rational> b);

Matrix matmul(const Matrix& a, const Matrix& b);

} // namespace npp
