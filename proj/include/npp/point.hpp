#pragma once

#include <cstddef>
#include <vector>

#include "npp/rational.hpp"

namespace npp {

/// A point (or direction) with exact rational coordinates.
struct Point {
    std::vector<Rational> coords;

    Point() = default;
    explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
    Point(std::initializer_list<Rational> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    Rational& operator[](std::size_t i) { return coords[i]; }
    const Rational& operator[](std::size_t i) const { return coords[i]; }

    bool operator==(const Point& o) const = default;
};

inline Point zero_point(std::size_t d) {
    return Point(std::vector<Rational>(d, Rational(0)));
}

inline Point operator+(const Point& a, const Point& b) {
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
    return r;
}

inline Point operator-(const Point& a, const Point& b) {
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
    return r;
}

inline Point operator*(const Rational& s, const Point& p) {
    Point r = p;
    for (auto& c : r.coords) c *= s;
    return r;
}

inline Rational dot(const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
}

} // namespace npp
