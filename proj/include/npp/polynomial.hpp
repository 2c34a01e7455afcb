#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "npp/rational.hpp"

namespace npp {

using Exponents = std::vector<unsigned>;

/// Integer-coefficient multivariate polynomial over a fixed-arity variable
/// registry (names live in the owning system/map). Terms map exponent
/// vectors to nonzero coefficients; zero coefficients are never stored.
struct Polynomial {
    std::size_t arity = 0;
    std::map<Exponents, Integer> terms;

    static Polynomial zero(std::size_t arity);
    static Polynomial constant(std::size_t arity, const Integer& c);
    static Polynomial variable(std::size_t arity, std::size_t index);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Integer constant_value() const; // 0 if zero polynomial

    unsigned degree_in(std::size_t var) const;
    unsigned total_degree() const;

    Rational eval(const std::vector<Rational>& point) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const = default;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& a, unsigned e);

/// Canonical text form, graded-lex descending. parse over the same
/// registry reproduces the polynomial exactly.
std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

struct Expr;

/// A conjunction of polynomial equations f = 0 with a declared box bound:
/// the user promises the common zero set lies in [-L, L]^n.
/// `source_exprs` keeps the parsed trees (when available) so the reduction
/// can flatten the written form instead of the expanded one.
struct PolySystem {
    std::vector<std::string> vars;
    std::vector<Polynomial> polys;
    Rational bound = 1;
    std::vector<std::shared_ptr<const Expr>> source_exprs;
};

/// Parses the text format: first significant line `bound <positive
/// rational>`, then one `<poly> = <poly>` equation per line (stored as
/// difference), `#` comments. Throws InputError with line/column.
PolySystem parse_system(const std::string& text);

std::string print_system(const PolySystem& s);

/// Exact values of every polynomial at the point, in declaration order.
std::vector<Rational> evaluate(const PolySystem& s, const std::vector<Rational>& point);

/// Ratio of integer polynomials; denominator not identically zero.
struct RatFunc {
    Polynomial num;
    Polynomial den;

    /// Cancels integer content and common monomial factors; normalizes the
    /// denominator's leading coefficient to be positive.
    void simplify();
    bool operator==(const RatFunc& o) const = default;
};

RatFunc rf_const(std::size_t arity, const Rational& q);
RatFunc rf_var(std::size_t arity, std::size_t index);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_scale(const RatFunc& a, const Rational& s);
RatFunc rf_shift(const RatFunc& a, const Rational& s);
RatFunc rf_recip(const RatFunc& a);
/// Equality as functions (cross-multiplied), exact.
bool rf_equal(const RatFunc& a, const RatFunc& b);
Rational rf_eval(const RatFunc& a, const std::vector<Rational>& point);

/// Vector of rational functions: a map from source space to target space.
struct RationalMap {
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    std::vector<RatFunc> components; // size = target arity

    static RationalMap identity(const std::vector<std::string>& vars);
};

/// Componentwise exact evaluation. Throws EvaluationError naming the
/// component if a denominator vanishes at the point.
std::vector<Rational> apply_map(const RationalMap& m, const std::vector<Rational>& point);

/// Symbolic composition g ∘ f (apply f first). Denominators are combined
/// by homogenizing each component of g over f's components.
RationalMap compose_maps(const RationalMap& g, const RationalMap& f);

} // namespace npp
