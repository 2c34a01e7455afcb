#include "npp/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "npp/errors.hpp"

namespace npp {

Polynomial Polynomial::zero(std::size_t arity) {
    Polynomial p;
    p.arity = arity;
    return p;
}

Polynomial Polynomial::constant(std::size_t arity, const Integer& c) {
    Polynomial p = zero(arity);
    if (c != 0) p.terms.emplace(Exponents(arity, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
    Polynomial p = zero(arity);
    Exponents e(arity, 0);
    e[index] = 1;
    p.terms.emplace(std::move(e), Integer(1));
    return p;
}

bool Polynomial::is_constant() const {
    if (terms.empty()) return true;
    return terms.size() == 1 &&
           std::all_of(terms.begin()->first.begin(), terms.begin()->first.end(),
                       [](unsigned e) { return e == 0; });
}

Integer Polynomial::constant_value() const {
    if (terms.empty()) return 0;
    return terms.begin()->second;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e[var]);
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) {
        unsigned t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() != arity) throw InputError("evaluation point has wrong arity");
    // power cache per variable
    std::vector<std::vector<Rational>> pows(arity);
    for (std::size_t v = 0; v < arity; ++v) pows[v].push_back(Rational(1));
    Rational sum = 0;
    for (const auto& [e, c] : terms) {
        Rational t(c);
        for (std::size_t v = 0; v < arity; ++v) {
            while (pows[v].size() <= e[v]) pows[v].push_back(pows[v].back() * point[v]);
            if (e[v] != 0) t *= pows[v][e[v]];
        }
        sum += t;
    }
    return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (arity != o.arity) throw InputError("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (arity != o.arity) throw InputError("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.arity != b.arity) throw InputError("polynomial arity mismatch");
    Polynomial r = Polynomial::zero(a.arity);
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            Exponents e(a.arity);
            for (std::size_t i = 0; i < a.arity; ++i) e[i] = ea[i] + eb[i];
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                Integer prod = ca * cb;
                if (prod != 0) r.terms.emplace(std::move(e), std::move(prod));
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms.erase(it);
            }
        }
    }
    return r;
}

Polynomial pow(const Polynomial& a, unsigned e) {
    Polynomial r = Polynomial::constant(a.arity, 1);
    Polynomial base = a;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
    if (p.terms.empty()) return "0";
    // graded-lex descending
    std::vector<std::pair<Exponents, Integer>> ts(p.terms.begin(), p.terms.end());
    auto grade = [](const Exponents& e) {
        unsigned t = 0;
        for (unsigned x : e) t += x;
        return t;
    };
    std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
        unsigned ga = grade(a.first), gb = grade(b.first);
        if (ga != gb) return ga > gb;
        return a.first > b.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        Integer coef = c;
        if (first) {
            if (coef < 0) { out << "-"; coef = -coef; }
        } else {
            out << (coef < 0 ? " - " : " + ");
            if (coef < 0) coef = -coef;
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (e[v] == 1) factors.push_back(vars[v]);
            else factors.push_back(vars[v] + "^" + std::to_string(e[v]));
        }
        if (factors.empty()) {
            out << to_string(coef);
        } else {
            if (coef != 1) out << to_string(coef) << "*";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out << "*";
                out << factors[i];
            }
        }
    }
    return out.str();
}

std::string print_system(const PolySystem& s) {
    std::ostringstream out;
    out << "bound " << to_string(s.bound) << "\n";
    for (const auto& p : s.polys) out << print_polynomial(p, s.vars) << " = 0\n";
    return out.str();
}

std::vector<Rational> evaluate(const PolySystem& s, const std::vector<Rational>& point) {
    if (point.size() != s.vars.size())
        throw InputError("assignment does not cover the variable registry");
    std::vector<Rational> vals;
    vals.reserve(s.polys.size());
    for (const auto& p : s.polys) vals.push_back(p.eval(point));
    return vals;
}

} // namespace npp
