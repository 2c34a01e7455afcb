#include "npp/reduction.hpp"

#include <map>
#include <sstream>

#include "npp/errors.hpp"
#include "npp/expr.hpp"
#include "npp/interval.hpp"
#include "npp/inv_builder.hpp"

namespace npp {

namespace {

using Var = InvBuilder::Var;
using QId = std::size_t;

/// A scaled quantity: t-variable with t = 9/8 + value / S for a
/// power-of-two S = 8B covering the value's enclosure.
struct Quantity {
    Var t;
    Interval box;
    Rational scale;
};

/// Affine form over quantities: sum of coeff * Q plus a constant. Linear
/// structure is carried symbolically; only products materialize variables.
struct AffExpr {
    std::map<QId, Rational> terms;
    Rational c0;

    bool constant() const { return terms.empty(); }
};

struct Flattener {
    const PolySystem& src;
    InvBuilder& b;

    std::vector<Quantity> quantities;
    std::map<std::size_t, QId> original_qids;          // source var -> quantity
    std::map<std::vector<std::pair<QId, Rational>>, QId> sum_cache; // with c0 folded in key
    std::map<std::pair<QId, QId>, QId> product_cache;
    std::map<QId, QId> square_cache;

    const Rational nine_eighths = Rational(9) / 8;

    static Rational bound_of(const Interval& box) {
        Rational m = std::max(box.hi < 0 ? -box.hi : box.hi, box.lo < 0 ? -box.lo : box.lo);
        if (m < 1) m = 1;
        return pow2_at_least(m);
    }

    QId make_quantity(const std::string& name, Interval box, RatFunc value_unscaled) {
        Rational B = bound_of(box);
        Rational S = 8 * B;
        Interval trange = ishift(iscale(box, 1 / S), nine_eighths);
        RatFunc tval = rf_shift(rf_scale(value_unscaled, 1 / S), nine_eighths);
        Var t = b.fresh_var(name, trange, std::move(tval));
        quantities.push_back({t, std::move(box), S});
        return quantities.size() - 1;
    }

    RatFunc unscaled_value(QId q) const {
        return rf_scale(rf_shift(b.value(quantities[q].t), -nine_eighths), quantities[q].scale);
    }

    QId original(std::size_t var) {
        auto it = original_qids.find(var);
        if (it != original_qids.end()) return it->second;
        Interval box{-src.bound, src.bound};
        QId q = make_quantity("t_" + src.vars[var], box, rf_var(src.vars.size(), var));
        original_qids.emplace(var, q);
        return q;
    }

    /// Emits the constraints tying value(target) = sum c_i value(q_i) + c0.
    void tie_affine(QId target, const std::vector<std::pair<Rational, QId>>& parts,
                    const Rational& c0, const std::string& what) {
        std::vector<std::pair<Rational, InvBuilder::Atom>> terms;
        Rational constant = c0;
        for (const auto& [c, q] : parts) {
            terms.emplace_back(c * quantities[q].scale, b.atom(quantities[q].t));
            constant -= c * quantities[q].scale * nine_eighths;
        }
        terms.emplace_back(-quantities[target].scale, b.atom(quantities[target].t));
        constant += quantities[target].scale * nine_eighths;
        b.require_zero_affine(terms, constant, what);
    }

    /// Materializes an affine form as a quantity (cached on its shape).
    QId materialize(const AffExpr& e) {
        if (e.terms.size() == 1 && e.terms.begin()->second == 1 && e.c0 == 0)
            return e.terms.begin()->first;
        if (e.constant())
            throw std::logic_error("materialize called on a constant form");
        std::vector<std::pair<QId, Rational>> key(e.terms.begin(), e.terms.end());
        key.emplace_back(QId(-1), e.c0); // fold the constant into the cache key
        auto it = sum_cache.find(key);
        if (it != sum_cache.end()) return it->second;

        Interval box = Interval::point(e.c0);
        for (const auto& [q, c] : e.terms) box = iadd(box, iscale(quantities[q].box, c));
        RatFunc value = rf_const(src.vars.size(), e.c0);
        std::vector<std::pair<Rational, QId>> parts;
        for (const auto& [q, c] : e.terms) {
            value = rf_add(value, rf_scale(unscaled_value(q), c));
            parts.emplace_back(c, q);
        }
        QId out = make_quantity("q" + std::to_string(quantities.size()), std::move(box),
                                std::move(value));
        tie_affine(out, parts, e.c0, "sum-tie(" + b.var_name(quantities[out].t) + ")");
        sum_cache.emplace(std::move(key), out);
        return out;
    }

    QId square_of(QId u) {
        auto it = square_cache.find(u);
        if (it != square_cache.end()) return it->second;
        const Quantity uq = quantities[u];
        Interval box = isquare(uq.box);
        RatFunc uval = unscaled_value(u);
        QId out = make_quantity("q" + std::to_string(quantities.size()), std::move(box),
                                rf_mul(uval, uval));
        // S_u^2 (tu - 9/8)^2 = S_out (t_out - 9/8), through the square gadget
        Rational ratio = uq.scale * uq.scale / quantities[out].scale;
        Var tsq = b.square(uq.t);
        b.require_zero_affine({{ratio, b.atom(tsq)},
                               {-ratio * Rational(9) / 4, b.atom(uq.t)},
                               {Rational(-1), b.atom(quantities[out].t)}},
                              ratio * Rational(81) / 64 + nine_eighths,
                              "square-tie(" + b.var_name(quantities[out].t) + ")");
        square_cache.emplace(u, out);
        return out;
    }

    QId product_of(QId u, QId v) {
        if (u == v) return square_of(u);
        auto key = std::minmax(u, v);
        auto it = product_cache.find(key);
        if (it != product_cache.end()) return it->second;
        const Quantity uq = quantities[u];
        const Quantity vq = quantities[v];
        Interval box = imul(uq.box, vq.box);
        QId out = make_quantity("q" + std::to_string(quantities.size()), std::move(box),
                                rf_mul(unscaled_value(u), unscaled_value(v)));
        // Polarization: tu*tv = msq - vsq + (9/8)(tu - tv) + 81/64 with
        // m = (tu+tv)/2 and v_sh = (tu-tv)/2 + 9/8, both inside [1, 5/4].
        Var hu = b.halve(uq.t);
        Var hv = b.halve(vq.t);
        Var m = b.add_of(hu, hv);
        Var tmp = b.shift_of(hu, Rational(9) / 8);
        Var vsh = b.sub_of(tmp, hv);
        Var msq = b.square(m);
        Var vsq = b.square(vsh);
        Rational ratio = uq.scale * vq.scale / quantities[out].scale;
        b.require_zero_affine({{ratio, b.atom(msq)},
                               {-ratio, b.atom(vsq)},
                               {-ratio * Rational(9) / 4, b.atom(vq.t)},
                               {Rational(-1), b.atom(quantities[out].t)}},
                              ratio * Rational(81) / 32 + nine_eighths,
                              "product-tie(" + b.var_name(quantities[out].t) + ")");
        product_cache.emplace(key, out);
        return out;
    }

    QId power_of(QId u, unsigned e) {
        if (e == 1) return u;
        QId half_pow = power_of(u, e / 2);
        QId even = square_of(half_pow);
        return (e % 2 == 0) ? even : product_of(even, u);
    }

    AffExpr flatten(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Const: return {{}, Rational(e.value)};
            case Expr::Kind::Var: return {{{original(e.var), Rational(1)}}, Rational(0)};
            case Expr::Kind::Add: {
                AffExpr a = flatten(*e.a), b2 = flatten(*e.b);
                for (const auto& [q, c] : b2.terms) {
                    auto [it, fresh] = a.terms.emplace(q, c);
                    if (!fresh) {
                        it->second += c;
                        if (it->second == 0) a.terms.erase(it);
                    }
                }
                a.c0 += b2.c0;
                return a;
            }
            case Expr::Kind::Sub: {
                AffExpr a = flatten(*e.a), b2 = flatten(*e.b);
                for (const auto& [q, c] : b2.terms) {
                    auto [it, fresh] = a.terms.emplace(q, -c);
                    if (!fresh) {
                        it->second -= c;
                        if (it->second == 0) a.terms.erase(it);
                    }
                }
                a.c0 -= b2.c0;
                return a;
            }
            case Expr::Kind::Neg: {
                AffExpr a = flatten(*e.a);
                for (auto& [q, c] : a.terms) c = -c;
                a.c0 = -a.c0;
                return a;
            }
            case Expr::Kind::Mul: {
                AffExpr a = flatten(*e.a), b2 = flatten(*e.b);
                if (a.constant() || b2.constant()) {
                    const AffExpr& scaled = a.constant() ? b2 : a;
                    const Rational f = a.constant() ? a.c0 : b2.c0;
                    AffExpr r = scaled;
                    for (auto& [q, c] : r.terms) c = c * f;
                    r.c0 *= f;
                    if (f == 0) r.terms.clear();
                    return r;
                }
                QId qa = materialize(a);
                QId qb = materialize(b2);
                return {{{product_of(qa, qb), Rational(1)}}, Rational(0)};
            }
            case Expr::Kind::Pow: {
                AffExpr a = flatten(*e.a);
                if (e.exp == 0) return {{}, Rational(1)};
                if (a.constant()) {
                    Rational r = 1;
                    for (unsigned i = 0; i < e.exp; ++i) r *= a.c0;
                    return {{}, r};
                }
                if (e.exp == 1) return a;
                QId qa = materialize(a);
                return {{{power_of(qa, e.exp), Rational(1)}}, Rational(0)};
            }
        }
        throw std::logic_error("unreachable");
    }

    /// One equation tree == 0, pinned as lhs = rhs across the sign split so
    /// the final chain only spans two comparable scales.
    void emit_equation(const Expr& e, std::size_t index, bool* dropped) {
        AffExpr aff = flatten(e);
        *dropped = false;
        const std::string what = "equation " + std::to_string(index + 1);
        if (aff.constant()) {
            if (aff.c0 == 0) {
                *dropped = true; // 0 = 0
                return;
            }
            b.mark_unsat("constant equation " + to_string(aff.c0) + " = 0");
            return;
        }
        AffExpr pos, neg;
        for (const auto& [q, c] : aff.terms)
            (c > 0 ? pos : neg).terms.emplace(q, c > 0 ? c : -c);
        (aff.c0 >= 0 ? pos : neg).c0 = aff.c0 >= 0 ? aff.c0 : -aff.c0;

        if (neg.constant() || pos.constant()) {
            const AffExpr& side = pos.constant() ? neg : pos;
            const Rational c = pos.constant() ? pos.c0 : neg.c0;
            AffExpr varside = side;
            Rational rhs = c - varside.c0; // value(sum of terms) must equal this
            varside.c0 = 0;
            QId q = materialize(varside);
            // value(q) = rhs  <=>  t_q = 9/8 + rhs / S_q
            b.require_zero_affine({{Rational(1), b.atom(quantities[q].t)}},
                                  -(nine_eighths + rhs / quantities[q].scale), what);
            return;
        }
        QId lhs = materialize(pos);
        QId rhs = materialize(neg);
        const Rational s1 = quantities[lhs].scale, s2 = quantities[rhs].scale;
        b.require_zero_affine({{s1, b.atom(quantities[lhs].t)},
                               {-s2, b.atom(quantities[rhs].t)}},
                              -nine_eighths * (s1 - s2), what);
    }
};

ReductionResult canonical_unsat(const PolySystem& src, const std::string& reason) {
    ReductionResult out;
    out.unsatisfiable = true;
    out.note = reason;
    std::size_t w = out.system.add_var("w");
    out.system.constraints.push_back(EtrInvSystem::Constraint::inv(w, w));
    out.system.constraints.push_back(EtrInvSystem::Constraint::add(w, w, w));
    out.witness.forward.source_vars = src.vars;
    out.witness.forward.target_vars = out.system.vars;
    out.witness.forward.components = {rf_const(src.vars.size(), 1)};
    out.witness.backward.source_vars = out.system.vars;
    out.witness.backward.target_vars = src.vars;
    for (std::size_t i = 0; i < src.vars.size(); ++i)
        out.witness.backward.components.push_back(rf_const(1, 0));
    return out;
}

} // namespace

ReductionResult reduce_poly_to_inv(const PolySystem& sys) {
    InvBuilder b(sys.vars);
    Flattener fl{sys, b};
    // t-variable for every declared variable first, in registry order
    for (std::size_t i = 0; i < sys.vars.size(); ++i) fl.original(i);

    for (std::size_t i = 0; i < sys.polys.size(); ++i) {
        if (sys.polys[i].is_zero()) continue; // 0 = 0, dropped
        ExprPtr tree = i < sys.source_exprs.size() && sys.source_exprs[i]
                           ? sys.source_exprs[i]
                           : polynomial_to_expr(sys.polys[i]);
        bool dropped = false;
        fl.emit_equation(*tree, i, &dropped);
        if (b.unsat()) break;
    }

    if (b.unsat()) return canonical_unsat(sys, b.unsat_reason());

    ReductionResult out;
    out.system = b.take_system();
    out.witness.forward.source_vars = sys.vars;
    out.witness.forward.target_vars = out.system.vars;
    out.witness.forward.components = b.take_values();

    // backward: x_i = S_i * (t_i - 9/8), a projection onto the t-variables
    out.witness.backward.source_vars = out.system.vars;
    out.witness.backward.target_vars = sys.vars;
    const std::size_t arity = out.system.vars.size();
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
        const Quantity& q = fl.quantities[fl.original_qids.at(i)];
        Integer s_int = num(q.scale); // scales are integer powers of two >= 8
        Polynomial numPoly =
            Polynomial::variable(arity, q.t) * Polynomial::constant(arity, s_int) -
            Polynomial::constant(arity, s_int * 9 / 8);
        RatFunc comp{std::move(numPoly), Polynomial::constant(arity, 1)};
        comp.simplify();
        out.witness.backward.components.push_back(std::move(comp));
    }
    return out;
}

} // namespace npp
