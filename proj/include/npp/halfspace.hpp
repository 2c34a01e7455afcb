#pragma once

#include <string>

#include "npp/point.hpp"

namespace npp {

enum class Relation { Ge, Le, Eq };

inline std::string relation_symbol(Relation r) {
    switch (r) {
        case Relation::Ge: return ">=";
        case Relation::Le: return "<=";
        default: return "=";
    }
}

/// Affine constraint  <normal, x> rel offset.  The normal is never the
/// zero vector.
struct Halfspace {
    Point normal;
    Rational offset;
    Relation rel = Relation::Ge;

    bool holds(const Point& x) const {
        Rational v = dot(normal, x);
        switch (rel) {
            case Relation::Ge: return v >= offset;
            case Relation::Le: return v <= offset;
            default: return v == offset;
        }
    }
};

} // namespace npp
