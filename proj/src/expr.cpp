#include "npp/expr.hpp"

namespace npp {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

} // namespace

ExprPtr expr_const(const Integer& c) {
    Expr e;
    e.kind = Expr::Kind::Const;
    e.value = c;
    return make(std::move(e));
}

ExprPtr expr_var(std::size_t index) {
    Expr e;
    e.kind = Expr::Kind::Var;
    e.var = index;
    return make(std::move(e));
}

ExprPtr expr_add(ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Add;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

ExprPtr expr_sub(ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Sub;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

ExprPtr expr_neg(ExprPtr a) {
    Expr e;
    e.kind = Expr::Kind::Neg;
    e.a = std::move(a);
    return make(std::move(e));
}

ExprPtr expr_mul(ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Mul;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

ExprPtr expr_pow(ExprPtr a, unsigned ex) {
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.exp = ex;
    e.a = std::move(a);
    return make(std::move(e));
}

Polynomial expr_to_polynomial(const Expr& e, std::size_t arity) {
    switch (e.kind) {
        case Expr::Kind::Const: return Polynomial::constant(arity, e.value);
        case Expr::Kind::Var: return Polynomial::variable(arity, e.var);
        case Expr::Kind::Add: return expr_to_polynomial(*e.a, arity) + expr_to_polynomial(*e.b, arity);
        case Expr::Kind::Sub: return expr_to_polynomial(*e.a, arity) - expr_to_polynomial(*e.b, arity);
        case Expr::Kind::Neg: return -expr_to_polynomial(*e.a, arity);
        case Expr::Kind::Mul: return expr_to_polynomial(*e.a, arity) * expr_to_polynomial(*e.b, arity);
        case Expr::Kind::Pow: return pow(expr_to_polynomial(*e.a, arity), e.exp);
    }
    throw std::logic_error("unreachable");
}

namespace {

ExprPtr monomial_expr(const Exponents& e) {
    ExprPtr acc;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        ExprPtr f = e[i] == 1 ? expr_var(i) : expr_pow(expr_var(i), e[i]);
        acc = acc ? expr_mul(acc, f) : f;
    }
    return acc; // null for the constant monomial
}

ExprPtr balanced_sum(std::vector<ExprPtr>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return expr_add(balanced_sum(terms, lo, mid), balanced_sum(terms, mid, hi));
}

} // namespace

ExprPtr polynomial_to_expr(const Polynomial& p) {
    std::vector<ExprPtr> terms;
    for (const auto& [e, c] : p.terms) {
        ExprPtr mono = monomial_expr(e);
        if (!mono)
            terms.push_back(expr_const(c));
        else if (c == 1)
            terms.push_back(mono);
        else if (c == -1)
            terms.push_back(expr_neg(mono));
        else
            terms.push_back(expr_mul(expr_const(c), mono));
    }
    if (terms.empty()) return expr_const(0);
    return balanced_sum(terms, 0, terms.size());
}

} // namespace npp
