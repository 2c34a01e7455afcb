#pragma once

#include <memory>

#include "npp/polynomial.hpp"

namespace npp {

/// Expression tree of one equation side, as parsed. The reduction flattens
/// this tree directly; keeping it avoids the coefficient blow-up of the
/// expanded normal form.
struct Expr {
    enum class Kind { Const, Var, Add, Sub, Neg, Mul, Pow } kind;
    Integer value;        // Const
    std::size_t var = 0;  // Var
    unsigned exp = 0;     // Pow
    std::shared_ptr<const Expr> a, b;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr expr_const(const Integer& c);
ExprPtr expr_var(std::size_t index);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_neg(ExprPtr a);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr a, unsigned e);

/// Lowers a tree to the expanded normal form.
Polynomial expr_to_polynomial(const Expr& e, std::size_t arity);

/// Synthesizes a tree from the expanded normal form (balanced term sum,
/// binary monomial splits). Used when no parsed tree is available.
ExprPtr polynomial_to_expr(const Polynomial& p);

} // namespace npp
