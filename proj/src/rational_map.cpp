#include <sstream>

#include "npp/errors.hpp"
#include "npp/polynomial.hpp"

namespace npp {

namespace {

Integer content(const Polynomial& p) {
    Integer g = 0;
    for (const auto& [e, c] : p.terms) g = boost::multiprecision::gcd(g, c < 0 ? Integer(-c) : c);
    return g;
}

Exponents common_monomial(const Polynomial& a, const Polynomial& b) {
    Exponents m(a.arity, 0);
    bool first = true;
    auto fold = [&](const Polynomial& p) {
        for (const auto& [e, c] : p.terms) {
            if (first) {
                m = e;
                first = false;
            } else {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
            }
        }
    };
    fold(a);
    fold(b);
    if (first) m.assign(a.arity, 0);
    return m;
}

Polynomial divide_out(const Polynomial& p, const Integer& g, const Exponents& mono) {
    Polynomial r = Polynomial::zero(p.arity);
    for (const auto& [e, c] : p.terms) {
        Exponents ne(e);
        for (std::size_t i = 0; i < ne.size(); ++i) ne[i] -= mono[i];
        r.terms.emplace(std::move(ne), c / g);
    }
    return r;
}

} // namespace

void RatFunc::simplify() {
    if (num.is_zero()) {
        // normalize 0/q to 0/1
        den = Polynomial::constant(den.arity, 1);
        return;
    }
    Integer g = boost::multiprecision::gcd(content(num), content(den));
    Exponents mono = common_monomial(num, den);
    if (g == 0) g = 1;
    num = divide_out(num, g, mono);
    den = divide_out(den, g, mono);
    if (den.terms.begin()->second < 0) {
        num = -num;
        den = -den;
    }
}

RatFunc rf_const(std::size_t arity, const Rational& q) {
    return {Polynomial::constant(arity, num(q)), Polynomial::constant(arity, den(q))};
}

RatFunc rf_var(std::size_t arity, std::size_t index) {
    return {Polynomial::variable(arity, index), Polynomial::constant(arity, 1)};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
    RatFunc r{a.num * b.den + b.num * a.den, a.den * b.den};
    r.simplify();
    return r;
}

RatFunc rf_sub(const RatFunc& a, const RatFunc& b) {
    RatFunc r{a.num * b.den - b.num * a.den, a.den * b.den};
    r.simplify();
    return r;
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
    RatFunc r{a.num * b.num, a.den * b.den};
    r.simplify();
    return r;
}

RatFunc rf_scale(const RatFunc& a, const Rational& s) {
    RatFunc r{a.num * Polynomial::constant(a.num.arity, num(s)),
              a.den * Polynomial::constant(a.den.arity, den(s))};
    r.simplify();
    return r;
}

RatFunc rf_shift(const RatFunc& a, const Rational& s) {
    return rf_add(a, rf_const(a.num.arity, s));
}

RatFunc rf_recip(const RatFunc& a) {
    if (a.num.is_zero()) throw EvaluationError("reciprocal of the zero function");
    RatFunc r{a.den, a.num};
    r.simplify();
    return r;
}

bool rf_equal(const RatFunc& a, const RatFunc& b) { return a.num * b.den == b.num * a.den; }

Rational rf_eval(const RatFunc& a, const std::vector<Rational>& point) {
    Rational d = a.den.eval(point);
    if (d == 0) throw EvaluationError("denominator vanishes at the evaluation point");
    return a.num.eval(point) / d;
}

RationalMap RationalMap::identity(const std::vector<std::string>& vars) {
    RationalMap m;
    m.source_vars = vars;
    m.target_vars = vars;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        RatFunc f;
        f.num = Polynomial::variable(vars.size(), i);
        f.den = Polynomial::constant(vars.size(), 1);
        m.components.push_back(std::move(f));
    }
    return m;
}

std::vector<Rational> apply_map(const RationalMap& m, const std::vector<Rational>& point) {
    if (point.size() != m.source_vars.size())
        throw InputError("point arity does not match the map's source space");
    std::vector<Rational> out;
    out.reserve(m.components.size());
    for (std::size_t i = 0; i < m.components.size(); ++i) {
        Rational d = m.components[i].den.eval(point);
        if (d == 0) {
            std::ostringstream msg;
            msg << "denominator of component " << i;
            if (i < m.target_vars.size()) msg << " (" << m.target_vars[i] << ")";
            msg << " vanishes at the evaluation point";
            throw EvaluationError(msg.str());
        }
        out.push_back(m.components[i].num.eval(point) / d);
    }
    return out;
}

namespace {

/// u(f_1/g_1, ..., f_k/g_k) homogenized with the caller-fixed per-variable
/// degrees D: returns sum_t c_t prod f_i^{t_i} g_i^{D_i - t_i}.
Polynomial substitute_homogenized(const Polynomial& u, const std::vector<RatFunc>& f,
                                  const std::vector<unsigned>& degs, std::size_t arity) {
    Polynomial acc = Polynomial::zero(arity);
    for (const auto& [e, c] : u.terms) {
        Polynomial t = Polynomial::constant(arity, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i]) t = t * pow(f[i].num, e[i]);
            unsigned rest = degs[i] - e[i];
            if (rest) t = t * pow(f[i].den, rest);
        }
        acc += t;
    }
    return acc;
}

} // namespace

RationalMap compose_maps(const RationalMap& g, const RationalMap& f) {
    if (g.source_vars.size() != f.target_vars.size())
        throw InputError("compose_maps: registries do not chain");
    RationalMap out;
    out.source_vars = f.source_vars;
    out.target_vars = g.target_vars;
    const std::size_t arity = f.source_vars.size();
    out.components.reserve(g.components.size());
    for (const auto& comp : g.components) {
        std::vector<unsigned> degs(g.source_vars.size());
        for (std::size_t i = 0; i < degs.size(); ++i)
            degs[i] = std::max(comp.num.degree_in(i), comp.den.degree_in(i));
        RatFunc r;
        r.num = substitute_homogenized(comp.num, f.components, degs, arity);
        r.den = substitute_homogenized(comp.den, f.components, degs, arity);
        if (r.den.is_zero())
            throw InputError("compose_maps: denominator collapsed to zero");
        r.simplify();
        out.components.push_back(std::move(r));
    }
    return out;
}

} // namespace npp
