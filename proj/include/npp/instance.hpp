#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "npp/halfspace.hpp"
#include "npp/inv_array.hpp"
#include "npp/point.hpp"

namespace npp {

/// Nested-polytope instance in dimension 2 + n + m with coordinate order
/// (e1, e2, f_1..f_n, g_1..g_m). The outer polytope B is the hull of the
/// u/v frame points, carved out of the carrier hyperplane
/// <e1+e2+f1+..+fn, x> = 1 by n+m+3 inequality facets. The inner polytope
/// A holds the frame endpoints, the projector points y/z forcing one vertex
/// per segment, and one gadget point per array constraint.
struct NestedInstance {
    struct OuterVertex {
        std::string label;
        Point p;
    };
    struct InnerVertex {
        std::string label;
        std::string role; // frame | projector_y | projector_z | rowpair | rowtriple | colinv
        Point p;
        std::ptrdiff_t constraint_ref = -1; // index into array constraints, -1 if none
    };
    struct Segment {
        std::string label;   // sigma_i_j
        std::size_t i, j;    // 1-based row/column
    };

    std::size_t m = 0, n = 0;
    std::size_t k = 0; // vertex budget m*n + 2m + 2
    std::vector<OuterVertex> outer;
    Halfspace carrier;             // equality constraint
    std::vector<Halfspace> facets; // the n+m+3 inequalities
    std::vector<InnerVertex> inner;
    std::vector<Segment> segments;
    std::vector<EtrInvArray::Constraint> array_constraints; // for diagnosis

    std::size_t dim() const { return 2 + n + m; }

    // coordinate indices
    std::size_t e(std::size_t which12) const { return which12 - 1; }
    std::size_t f(std::size_t j) const { return 1 + j; }      // j is 1-based
    std::size_t g(std::size_t i) const { return 1 + n + i; }  // i is 1-based

    /// v_{0,j} + ((1+alpha)/3)(v_{i,j} - v_{0,j}); its g_i coordinate is alpha.
    Point segment_point(std::size_t i, std::size_t j, const Rational& alpha) const;

    const OuterVertex* find_outer(const std::string& label) const;
};

/// Emits the explicit instance for an m x n array.
NestedInstance build_instance(const EtrInvArray& array);

struct OuterReport {
    bool ok = false;
    std::size_t outer_count = 0;
    bool count_ok = false; // (n+2)(m+1)
    std::size_t facet_count = 0;
    bool facet_count_ok = false; // n+m+3
    std::size_t rank = 0;
    bool rank_ok = false; // n+m+1
    bool outer_on_facets_ok = false;
    bool inner_inside_ok = false;
    bool extremal_ok = false;
    std::string extremality_method; // "lp" or "box-certificate"
    std::string first_failure;      // label + reason of the first failed check
};

struct ValidateOptions {
    // "auto" picks exact LP hull tests for desk-size instances and the exact
    // box-extremality certificate for large ones.
    enum class Extremality { Auto, Lp, BoxCertificate } extremality = Extremality::Auto;
};

OuterReport validate_outer(const NestedInstance& inst, const ValidateOptions& opts = {});

void instance_to_json(const NestedInstance& inst, std::ostream& out);
std::string instance_to_json(const NestedInstance& inst);
NestedInstance instance_from_json(const std::string& text);

} // namespace npp
