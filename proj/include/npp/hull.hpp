#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "npp/certificate.hpp"
#include "npp/halfspace.hpp"
#include "npp/point.hpp"

namespace npp {

/// Decides query ∈ conv(generators) exactly, by LP feasibility of the
/// convex-combination system, and returns a verifiable certificate either
/// way. Deterministic (Bland's rule). Throws InputError on dimension
/// mismatch or empty generator list.
Certificate in_hull(const Point& query, const std::vector<Point>& generators);

/// Recomputes a certificate against the query/generators it claims to
/// certify. Inside: coefficients >= 0, sum 1, exact recombination.
/// Outside: strict separation. Pure arithmetic, independent of the LP.
bool verify_certificate(const Certificate& cert, const Point& query,
                        const std::vector<Point>& generators);

struct SatisfyReport {
    bool ok = true;
    std::size_t first_violated = 0; // valid iff !ok
};

/// True iff every constraint holds exactly; otherwise reports the index
/// of the first violated constraint.
SatisfyReport satisfies(const Point& p, const std::vector<Halfspace>& constraints);

/// Dimension of the affine hull; 0 for a single point.
/// Permutation- and translation-invariant.
std::size_t affine_rank(const std::vector<Point>& points);

/// True iff points[candidate] is not in the convex hull of the others.
bool is_vertex(std::size_t candidate, const std::vector<Point>& points);

} // namespace npp
