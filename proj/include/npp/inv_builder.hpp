#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "npp/etr_inv.hpp"
#include "npp/interval.hpp"
#include "npp/polynomial.hpp"

namespace npp {

/// Emission engine for ETR-INV constraint systems. Every variable carries
/// an exact interval enclosure of its value over the source box and a
/// symbolic value (a rational function of the source variables). Each
/// emitted constraint is range-checked (operands provably in [1/2, 2]) and
/// verified symbolically against the recorded values; a violation throws
/// ConstructionError naming the gadget, so an unsound system is never
/// produced.
class InvBuilder {
public:
    using Var = std::size_t;

    /// Residual bookkeeping: the quantity of interest is value(var) - anchor.
    struct Atom {
        Var var;
        Rational anchor;
    };

    explicit InvBuilder(std::vector<std::string> source_vars);

    /// Fresh unconstrained variable with known enclosure and symbolic value.
    Var fresh_var(const std::string& name, Interval range, RatFunc value);

    /// Dyadic constant in [1/2, 2], pinned by an addition chain from
    /// one (Inv(one, one)) and half (Add(half, half, one)). Cached.
    Var konst(const Rational& q);
    Var one() { return konst(Rational(1)); }
    Var half() { return konst(Rational(1) / 2); }

    Var inv_of(Var v);                         // cached reciprocal, Inv(v, r)
    Var halve(Var v);                          // cached v/2 (requires lo(v) >= 1)
    Var shift_of(Var v, const Rational& delta); // cached v + delta
    Var add_of(Var a, Var b);                  // fresh a + b (range-checked)
    Var sub_of(Var a, Var b);                  // fresh a - b (range-checked)

    /// Squaring gadget for v with enclosure inside [1, 5/4]:
    /// a = v - 1/2, i1 = 1/a, i2 = 1/v, d = i1 - i2 = 1/(2v^2 - v),
    /// e = 1/d, h = e/2, v^2 = h + v/2. Cached per v.
    Var square(Var v);

    /// Forces a = b through a shared shifted variable. `imposes` marks a
    /// genuine constraint (values agree only on the solution set), which
    /// skips the symbolic identity check.
    void equate(Var a, Var b, bool imposes = false);

    Atom atom(Var v) const { return {v, Rational(0)}; }

    /// Emits constraints forcing sum_i c_i * (value(a_i) - anchor_i) + c0 = 0.
    /// Coefficients must be dyadic.
    void require_zero_affine(const std::vector<std::pair<Rational, Atom>>& terms,
                             const Rational& c0, const std::string& what);

    /// Marks the whole construction as provably unsatisfiable over the
    /// source box (detected pin outside its enclosure). The caller replaces
    /// the output with the canonical empty system.
    void mark_unsat(const std::string& reason);
    bool unsat() const { return unsat_; }
    const std::string& unsat_reason() const { return unsat_reason_; }

    const Interval& range(Var v) const { return ranges_[v]; }
    const RatFunc& value(Var v) const { return values_[v]; }
    const std::string& var_name(Var v) const { return sys_.vars[v]; }
    std::size_t var_count() const { return sys_.vars.size(); }

    EtrInvSystem take_system() { return std::move(sys_); }
    std::vector<RatFunc> take_values() { return std::move(values_); }

    /// Symbolic per-constraint verification (on by default; tests rely on it).
    void set_symbolic_checks(bool on) { symbolic_checks_ = on; }

    // Atom calculus used by require_zero_affine; exposed for tests.
    Atom atom_halve(Atom a);
    Atom atom_add(Atom a, Atom b);
    Atom atom_sub(Atom a, Atom b);
    Atom atom_scale_dyadic(Atom a, const Rational& q); // 0 < q <= 1, dyadic
    Interval atom_range(const Atom& a) const { return ishift(ranges_[a.var], -a.anchor); }

private:
    void emit_add(Var x, Var y, Var z, const std::string& what, bool imposes = false);
    void emit_inv(Var x, Var y, const std::string& what);
    void check_range(Var v, const std::string& what) const;

    EtrInvSystem sys_;
    std::vector<std::string> source_vars_;
    std::vector<Interval> ranges_;
    std::vector<RatFunc> values_;
    bool symbolic_checks_ = true;
    bool unsat_ = false;
    std::string unsat_reason_;

    std::set<std::string> used_names_;
    std::map<Rational, Var> const_cache_;
    std::map<Var, Var> inv_cache_;
    std::map<Var, Var> halve_cache_;
    std::map<std::pair<Var, Rational>, Var> shift_cache_;
    std::map<Var, Var> square_cache_;
};

} // namespace npp
