#include "npp/rational.hpp"

namespace npp {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::size_t start = 0;
    bool neg = false;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        start = 1;
    }
    auto digits_only = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!digits_only(text.substr(start)))
            throw InputError("malformed rational literal '" + text + "'");
        Integer n(text.substr(start));
        return neg ? Rational(-n) : Rational(n);
    }
    std::string ns = text.substr(start, slash - start);
    std::string ds = text.substr(slash + 1);
    if (!digits_only(ns) || !digits_only(ds))
        throw InputError("malformed rational literal '" + text + "'");
    Integer n(ns), d(ds);
    if (d == 0) throw InputError("zero denominator in '" + text + "'");
    Rational r(n);
    r /= Rational(d);
    return neg ? -r : r;
}

bool is_dyadic(const Rational& q) {
    Integer d = den(q);
    return (d & (d - 1)) == 0;
}

Rational pow2(long k) {
    Integer p = Integer(1) << static_cast<unsigned>(k < 0 ? -k : k);
    if (k >= 0) return Rational(p);
    Rational r = 1;
    r /= Rational(p);
    return r;
}

long ceil_log2(const Rational& q) {
    if (q <= 0) throw InputError("ceil_log2 of non-positive rational");
    long k = 0;
    Rational p = 1;
    while (p < q) { p *= 2; ++k; }
    while (p / 2 >= q) { p /= 2; --k; }
    return k;
}

Rational round_denominator(const Rational& x, const Integer& max_den) {
    if (den(x) <= max_den) return x;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest = x < 0 ? -x : x;
    while (true) {
        Integer a = num(rest) / den(rest);
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Rational frac = rest - Rational(a);
        if (frac == 0) break;
        rest = 1 / frac;
    }
    Rational best(p1);
    best /= Rational(q1);
    return x < 0 ? -best : best;
}

} // namespace npp
