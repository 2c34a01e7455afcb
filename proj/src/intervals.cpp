#include "npp/interval.hpp"

#include "npp/errors.hpp"

namespace npp {

Interval iadd(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return {};
    return {a.lo + b.lo, a.hi + b.hi};
}

Interval isub(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return {};
    return {a.lo - b.hi, a.hi - b.lo};
}

Interval ineg(const Interval& a) {
    if (a.empty()) return {};
    return {-a.hi, -a.lo};
}

Interval imul(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return {};
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rational lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return {lo, hi};
}

Interval iscale(const Interval& a, const Rational& s) {
    if (a.empty()) return {};
    if (s >= 0) return {a.lo * s, a.hi * s};
    return {a.hi * s, a.lo * s};
}

Interval ishift(const Interval& a, const Rational& s) {
    if (a.empty()) return {};
    return {a.lo + s, a.hi + s};
}

Interval iintersect(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return {};
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval ihull(const Interval& a, const Interval& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval irecip(const Interval& a) {
    if (a.empty()) return {};
    if (a.lo <= 0 && a.hi >= 0) throw InputError("irecip: interval contains zero");
    return {1 / a.hi, 1 / a.lo};
}

Interval isquare(const Interval& a) {
    if (a.empty()) return {};
    Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
    if (a.lo >= 0) return {l2, h2};
    if (a.hi <= 0) return {h2, l2};
    return {Rational(0), std::max(l2, h2)};
}

Interval ipow(const Interval& a, unsigned e) {
    if (e == 0) return Interval::point(1);
    if (a.empty()) return {};
    Interval r = a;
    // even powers tightened through the square
    if (e % 2 == 0) {
        r = isquare(a);
        e /= 2;
        Interval acc = r;
        for (unsigned i = 1; i < e; ++i) acc = imul(acc, r);
        return acc;
    }
    Interval acc = a;
    for (unsigned i = 1; i < e; ++i) acc = imul(acc, a);
    return acc;
}

} // namespace npp
