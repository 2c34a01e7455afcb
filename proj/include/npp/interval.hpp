#pragma once

#include <algorithm>

#include "npp/rational.hpp"

namespace npp {

/// Closed rational interval [lo, hi]; empty when lo > hi. All operations
/// are exact, so enclosures are tight for monotone operands.
struct Interval {
    Rational lo, hi;

    Interval() : lo(1), hi(0) {} // empty
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
    static Interval point(const Rational& v) { return {v, v}; }

    bool empty() const { return lo > hi; }
    Rational width() const { return empty() ? Rational(0) : hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool subset_of(const Interval& o) const { return empty() || (lo >= o.lo && hi <= o.hi); }
    bool operator==(const Interval& o) const = default;
};

Interval iadd(const Interval& a, const Interval& b);
Interval isub(const Interval& a, const Interval& b);
Interval ineg(const Interval& a);
Interval imul(const Interval& a, const Interval& b);
Interval iscale(const Interval& a, const Rational& s);
Interval ishift(const Interval& a, const Rational& s);
Interval iintersect(const Interval& a, const Interval& b);
Interval ihull(const Interval& a, const Interval& b);
/// Requires 0 outside [a.lo, a.hi].
Interval irecip(const Interval& a);
Interval isquare(const Interval& a);
Interval ipow(const Interval& a, unsigned e);

} // namespace npp
