#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "npp/errors.hpp"

namespace npp {

/// Exact arbitrary-precision rational. GMP keeps values canonical
/// (denominator > 0, gcd(num, den) = 1), so equality is structural.
/// No floating point is used anywhere downstream of this type.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Canonical string form: "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "p", "-p", "p/q". Rejects q = 0 and junk.
Rational parse_rational(const std::string& text);

/// True iff the denominator is a power of two.
bool is_dyadic(const Rational& q);

/// 2^k as a rational, k may be negative.
Rational pow2(long k);

/// Smallest k with 2^k >= q (q > 0).
long ceil_log2(const Rational& q);

/// Smallest power of two >= q (q > 0).
inline Rational pow2_at_least(const Rational& q) { return pow2(ceil_log2(q)); }

/// Best rational approximation of x with denominator <= max_den
/// (Stern-Brocot descent). Used to snap solver midpoints onto nearby
/// exact solutions.
Rational round_denominator(const Rational& x, const Integer& max_den);

} // namespace npp
