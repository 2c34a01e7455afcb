#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "npp/halfspace.hpp"

namespace npp {

/// Self-certifying answer to a hull-membership query.
///
/// Inside: a convex combination of the generators (sparse, by index)
/// that recombines to the query point exactly.
/// Outside: a hyperplane with every generator strictly on one side and
/// the query point strictly on the other.
struct Certificate {
    enum class Kind { Inside, Outside };

    Kind kind = Kind::Outside;
    std::vector<std::pair<std::size_t, Rational>> combination; // Inside witness
    Halfspace separator;                                       // Outside witness

    bool inside() const { return kind == Kind::Inside; }
};

} // namespace npp
