#pragma once

#include <string>

#include "npp/etr_inv.hpp"
#include "npp/polynomial.hpp"

namespace npp {

/// Forward: original variables -> ETR-INV solutions. Backward: coordinate
/// projection (with unscaling) recovering the original variables.
struct ReductionWitness {
    RationalMap forward;
    RationalMap backward;
};

struct ReductionResult {
    EtrInvSystem system;
    ReductionWitness witness;
    bool unsatisfiable = false; // canonical empty marker emitted
    std::string note;           // reason, when unsatisfiable
};

/// Reduces a bounded polynomial system to an ETR-INV system whose solution
/// set within [1/2, 2]^N is rationally equivalent to V(F) ∩ box(L).
///
/// Construction: each variable x (original or monomial auxiliary) is scaled
/// into t = 9/8 + x / (8B) for a power-of-two enclosure bound B, placing t
/// in [1, 5/4]. Monomials are built by binary exponent splits through
/// squaring/product gadgets; each polynomial becomes one interval-checked
/// affine chain pinned to a dyadic constant. Throws ConstructionError if a
/// gadget instance fails its range check.
ReductionResult reduce_poly_to_inv(const PolySystem& sys);

} // namespace npp
