#pragma once

#include <vector>

#include "npp/rational.hpp"

namespace npp {

/// Outcome of an exact equality-form feasibility question
///   { x >= 0 : A x = b }.
///
/// Feasible: `solution` is one feasible x (a basic solution).
/// Infeasible: `farkas` is a vector y with  y^T A <= 0 (componentwise over
/// the columns of A) and y^T b > 0, certifying emptiness.
struct Feasibility {
    bool feasible = false;
    std::vector<Rational> solution;
    std::vector<Rational> farkas;
};

/// Phase-1 simplex with Bland's rule, exact rational arithmetic throughout.
/// Deterministic for identical inputs. `rows` is the dense matrix A by rows.
Feasibility solve_equality_feasibility(const std::vector<std::vector<Rational>>& rows,
                                       const std::vector<Rational>& b);

} // namespace npp
