#include "npp/inv_builder.hpp"

#include <algorithm>
#include <sstream>

#include "npp/errors.hpp"

namespace npp {

namespace {

Interval unit_range() { return {Rational(1) / 2, Rational(2)}; }

[[noreturn]] void gadget_fail(const std::string& what, const std::string& detail) {
    throw ConstructionError("range-check failure in gadget " + what + ": " + detail);
}

} // namespace

InvBuilder::InvBuilder(std::vector<std::string> source_vars)
    : source_vars_(std::move(source_vars)) {}

InvBuilder::Var InvBuilder::fresh_var(const std::string& name, Interval range, RatFunc value) {
    if (!range.subset_of(unit_range()))
        gadget_fail("fresh_var(" + name + ")", "enclosure [" + to_string(range.lo) + ", " +
                                                   to_string(range.hi) + "] leaves [1/2, 2]");
    std::string unique = name;
    int suffix = 2;
    while (used_names_.count(unique)) unique = name + "_" + std::to_string(suffix++);
    used_names_.insert(unique);
    ranges_.push_back(std::move(range));
    values_.push_back(std::move(value));
    return sys_.add_var(unique);
}

void InvBuilder::check_range(Var v, const std::string& what) const {
    if (!ranges_[v].subset_of(unit_range()))
        gadget_fail(what, "operand " + sys_.vars[v] + " not provably in [1/2, 2]");
}

void InvBuilder::emit_add(Var x, Var y, Var z, const std::string& what, bool imposes) {
    if (unsat_) return;
    check_range(x, what);
    check_range(y, what);
    check_range(z, what);
    if (iintersect(iadd(ranges_[x], ranges_[y]), ranges_[z]).empty())
        gadget_fail(what, "sum enclosure is disjoint from the target enclosure");
    if (symbolic_checks_ && !imposes && !rf_equal(rf_add(values_[x], values_[y]), values_[z]))
        throw ConstructionError("symbolic check failed for " + what + ": " + sys_.vars[x] +
                                " + " + sys_.vars[y] + " != " + sys_.vars[z]);
    sys_.constraints.push_back(EtrInvSystem::Constraint::add(x, y, z));
}

void InvBuilder::emit_inv(Var x, Var y, const std::string& what) {
    if (unsat_) return;
    check_range(x, what);
    check_range(y, what);
    if (symbolic_checks_ &&
        !rf_equal(rf_mul(values_[x], values_[y]), rf_const(source_vars_.size(), 1)))
        throw ConstructionError("symbolic check failed for " + what + ": " + sys_.vars[x] +
                                " * " + sys_.vars[y] + " != 1");
    sys_.constraints.push_back(EtrInvSystem::Constraint::inv(x, y));
}

InvBuilder::Var InvBuilder::konst(const Rational& q) {
    auto it = const_cache_.find(q);
    if (it != const_cache_.end()) return it->second;
    if (!is_dyadic(q)) gadget_fail("konst(" + to_string(q) + ")", "constant is not dyadic");
    if (q < inv_range_lo() || q > inv_range_hi())
        gadget_fail("konst(" + to_string(q) + ")", "constant outside [1/2, 2]");

    const std::size_t arity = source_vars_.size();
    Var v;
    if (q == 1) {
        v = fresh_var("one", Interval::point(1), rf_const(arity, 1));
        emit_inv(v, v, "konst(1)");
    } else if (q == Rational(1) / 2) {
        Var o = one();
        v = fresh_var("half", Interval::point(q), rf_const(arity, q));
        emit_add(v, v, o, "konst(1/2)");
    } else if (q > 1) {
        // q = 1/2 + (q - 1/2), both addends in [1/2, 2]
        Var lhs = half();
        Var rhs = konst(q - Rational(1) / 2);
        v = fresh_var("c_" + to_string(num(q)) + "_" + to_string(den(q)), Interval::point(q),
                      rf_const(arity, q));
        emit_add(lhs, rhs, v, "konst(" + to_string(q) + ")");
    } else {
        // 1/2 < q < 1: pin 2q first, then halve it via Add(q, q, 2q)
        Var twice = konst(q * 2);
        v = fresh_var("c_" + to_string(num(q)) + "_" + to_string(den(q)), Interval::point(q),
                      rf_const(arity, q));
        emit_add(v, v, twice, "konst(" + to_string(q) + ")");
    }
    const_cache_.emplace(q, v);
    return v;
}

InvBuilder::Var InvBuilder::inv_of(Var x) {
    auto it = inv_cache_.find(x);
    if (it != inv_cache_.end()) return it->second;
    const std::string what = "inv(" + sys_.vars[x] + ")";
    const Interval r = ranges_[x];
    if (r.lo <= 0) gadget_fail(what, "operand enclosure reaches zero");
    Var v = fresh_var(sys_.vars[x] + "_inv", irecip(r), rf_recip(values_[x]));
    emit_inv(x, v, what);
    inv_cache_.emplace(x, v);
    inv_cache_.emplace(v, x);
    return v;
}

InvBuilder::Var InvBuilder::halve(Var x) {
    auto it = halve_cache_.find(x);
    if (it != halve_cache_.end()) return it->second;
    const std::string what = "halve(" + sys_.vars[x] + ")";
    const Interval r = ranges_[x];
    if (r.lo < 1) gadget_fail(what, "operand enclosure dips below 1");
    Interval hr = iscale(r, Rational(1) / 2);
    RatFunc hv = rf_scale(values_[x], Rational(1) / 2);
    Var h = fresh_var(sys_.vars[x] + "_h", hr, hv);
    Var h2 = fresh_var(sys_.vars[x] + "_hb", hr, hv);
    emit_add(h, h2, x, what);
    equate(h, h2);
    halve_cache_.emplace(x, h);
    return h;
}

InvBuilder::Var InvBuilder::shift_of(Var x, const Rational& delta) {
    if (delta == 0) return x;
    auto key = std::make_pair(x, delta);
    auto it = shift_cache_.find(key);
    if (it != shift_cache_.end()) return it->second;
    const std::string what = "shift(" + sys_.vars[x] + ", " + to_string(delta) + ")";
    const Interval rx = ranges_[x];
    Interval tr = ishift(rx, delta);
    if (!tr.subset_of(unit_range())) gadget_fail(what, "shift target leaves [1/2, 2]");
    RatFunc tv = rf_shift(values_[x], delta);
    Var out;
    Rational k = delta < 0 ? -delta : delta;
    if (k >= Rational(1) / 2 && k <= 2) {
        out = fresh_var(sys_.vars[x] + "_s", tr, tv);
        if (delta > 0)
            emit_add(x, konst(k), out, what);
        else
            emit_add(out, konst(k), x, what);
    } else {
        // |delta| < 1/2: route through x + c1 with c1 and c1 - delta in [1/2, 1]
        Rational c1 = delta > 0 ? delta + Rational(1) / 2 : Rational(1) / 2;
        Interval mid_up = ishift(rx, c1);
        if (mid_up.subset_of(unit_range())) {
            Var tmp = fresh_var(sys_.vars[x] + "_sa", mid_up, rf_shift(values_[x], c1));
            emit_add(x, konst(c1), tmp, what);
            out = fresh_var(sys_.vars[x] + "_s", tr, tv);
            emit_add(out, konst(c1 - delta), tmp, what);
        } else {
            // symmetric variant through x - c2
            Rational c2 = delta > 0 ? Rational(1) / 2 : Rational(1) / 2 - delta;
            Interval mid_dn = ishift(rx, -c2);
            if (!mid_dn.subset_of(unit_range()))
                gadget_fail(what, "no in-range intermediate for the shift");
            Var tmp = fresh_var(sys_.vars[x] + "_sa", mid_dn, rf_shift(values_[x], -c2));
            emit_add(tmp, konst(c2), x, what);
            out = fresh_var(sys_.vars[x] + "_s", tr, tv);
            emit_add(tmp, konst(c2 + delta), out, what);
        }
    }
    shift_cache_.emplace(key, out);
    return out;
}

InvBuilder::Var InvBuilder::add_of(Var a, Var b) {
    const std::string what = "add(" + sys_.vars[a] + ", " + sys_.vars[b] + ")";
    Interval r = iadd(ranges_[a], ranges_[b]);
    if (!r.subset_of(unit_range())) gadget_fail(what, "sum leaves [1/2, 2]");
    Var v = fresh_var(sys_.vars[a] + "_p", r, rf_add(values_[a], values_[b]));
    emit_add(a, b, v, what);
    return v;
}

InvBuilder::Var InvBuilder::sub_of(Var a, Var b) {
    const std::string what = "sub(" + sys_.vars[a] + ", " + sys_.vars[b] + ")";
    Interval r = isub(ranges_[a], ranges_[b]);
    if (!r.subset_of(unit_range())) gadget_fail(what, "difference leaves [1/2, 2]");
    Var v = fresh_var(sys_.vars[a] + "_m", r, rf_sub(values_[a], values_[b]));
    emit_add(b, v, a, what);
    return v;
}

void InvBuilder::equate(Var a, Var b, bool imposes) {
    if (unsat_ || a == b) return;
    const std::string what = "equate(" + sys_.vars[a] + ", " + sys_.vars[b] + ")";
    if (symbolic_checks_ && !imposes && !rf_equal(values_[a], values_[b]))
        throw ConstructionError("symbolic check failed for " + what);
    Interval common = iintersect(ranges_[a], ranges_[b]);
    if (common.empty()) {
        mark_unsat("equate: enclosures of " + sys_.vars[a] + " and " + sys_.vars[b] +
                   " are disjoint");
        return;
    }
    Rational hi = std::max(ranges_[a].hi, ranges_[b].hi);
    Rational lo = std::min(ranges_[a].lo, ranges_[b].lo);
    Rational c;
    if (hi + Rational(1) / 2 <= 2)
        c = Rational(1) / 2;
    else if (lo - Rational(1) / 2 >= Rational(1) / 2)
        c = Rational(-1) / 2;
    else
        gadget_fail(what, "no feasible shared shift");
    Interval sr = ishift(common, c);
    RatFunc sv = rf_shift(values_[a], c);
    Var s = fresh_var(sys_.vars[a] + "_eq", sr, sv);
    if (c > 0) {
        emit_add(a, konst(c), s, what);
        emit_add(b, konst(c), s, what, imposes);
    } else {
        emit_add(s, konst(-c), a, what);
        emit_add(s, konst(-c), b, what, imposes);
    }
    // the shared variable doubles as a shift of both operands
    shift_cache_.emplace(std::make_pair(a, c), s);
    if (!imposes) shift_cache_.emplace(std::make_pair(b, c), s);
}

InvBuilder::Var InvBuilder::square(Var t) {
    auto it = square_cache_.find(t);
    if (it != square_cache_.end()) return it->second;
    const std::string what = "square(" + sys_.vars[t] + ")";
    const Interval r = ranges_[t];
    if (r.lo < 1 || r.hi > Rational(5) / 4)
        gadget_fail(what, "input enclosure not inside [1, 5/4]");

    // Every intermediate is monotone in t on [1, 5/4], so exact endpoint
    // images give the tight enclosures the range checks need.
    auto dfun = [](const Rational& x) { return 1 / (2 * x * x - x); };
    auto efun = [](const Rational& x) { return 2 * x * x - x; };

    Var a = shift_of(t, Rational(-1) / 2);
    Var i1 = inv_of(a);
    Var i2 = inv_of(t);
    // d = i1 - i2 = 1/(2t^2 - t), decreasing in t
    Interval dr{dfun(r.hi), dfun(r.lo)};
    if (!dr.subset_of(unit_range())) gadget_fail(what, "d-step leaves [1/2, 2]");
    Var d = fresh_var(sys_.vars[t] + "_d", dr, rf_sub(values_[i1], values_[i2]));
    emit_add(i2, d, i1, what);
    Var e = inv_of(d);
    ranges_[e] = iintersect(ranges_[e], Interval{efun(r.lo), efun(r.hi)});
    Var h = halve(e); // h = t^2 - t/2
    Var th = halve(t);
    Interval sq{r.lo * r.lo, r.hi * r.hi};
    Var out = fresh_var(sys_.vars[t] + "_sq", sq, rf_mul(values_[t], values_[t]));
    emit_add(h, th, out, what);
    square_cache_.emplace(t, out);
    return out;
}

InvBuilder::Atom InvBuilder::atom_halve(Atom a) {
    Var v = a.var;
    Rational anchor = a.anchor;
    const Interval r = ranges_[v];
    if (r.lo < 1) {
        if (r.width() > 1) gadget_fail("atom_halve", "enclosure too wide to lift above 1");
        Rational delta = 1 - r.lo;
        v = shift_of(v, delta);
        anchor += delta;
    }
    Var h = halve(v);
    return {h, anchor / 2};
}

InvBuilder::Atom InvBuilder::atom_add(Atom a, Atom b) {
    // shift both operands down to lo = 1/2 so the raw sum stays in range
    Rational da = Rational(1) / 2 - ranges_[a.var].lo;
    Var va = shift_of(a.var, da);
    Rational db = Rational(1) / 2 - ranges_[b.var].lo;
    Var vb = shift_of(b.var, db);
    Var s = add_of(va, vb);
    return {s, a.anchor + da + b.anchor + db};
}

InvBuilder::Atom InvBuilder::atom_sub(Atom a, Atom b) {
    // place b at lo = 1/2 and a at lo = 1 + width(b) so a - b lands at lo = 1/2
    Rational wb = ranges_[b.var].width();
    Rational db = Rational(1) / 2 - ranges_[b.var].lo;
    Var vb = shift_of(b.var, db);
    Rational da = 1 + wb - ranges_[a.var].lo;
    Var va = shift_of(a.var, da);
    Var s = sub_of(va, vb);
    return {s, (a.anchor + da) - (b.anchor + db)};
}

InvBuilder::Atom InvBuilder::atom_scale_dyadic(Atom a, const Rational& q) {
    if (q == 1) return a;
    if (q <= 0 || q > 1 || !is_dyadic(q))
        throw ConstructionError("atom_scale_dyadic: bad factor " + to_string(q));
    // bits of q, shallow to deep, walked along one shared halving chain
    Integer n = num(q);
    long k = 0;
    for (Integer d = den(q); d > 1; d >>= 1) ++k;
    std::vector<long> depths;
    for (long bit = 0; (Integer(1) << static_cast<unsigned>(bit)) <= n; ++bit)
        if (boost::multiprecision::bit_test(n, static_cast<unsigned>(bit)))
            depths.push_back(k - bit);
    std::sort(depths.begin(), depths.end());
    std::optional<Atom> acc;
    Atom cur = a;
    long at = 0;
    for (long depth : depths) {
        while (at < depth) {
            cur = atom_halve(cur);
            ++at;
        }
        acc = acc ? atom_add(*acc, cur) : cur;
    }
    return *acc;
}

void InvBuilder::require_zero_affine(const std::vector<std::pair<Rational, Atom>>& terms,
                                     const Rational& c0, const std::string& what) {
    if (unsat_) return;
    // prescale so every folded coefficient is at most 1 and the scaled width
    // budget keeps each partial sum inside [1/2, 2]
    long s = 0;
    for (;; ++s) {
        bool ok = true;
        Rational budget = 0;
        for (const auto& [c, a] : terms) {
            if (c == 0) continue;
            Rational ac = c < 0 ? -c : c;
            ac /= pow2(s);
            if (ac > 1) ok = false;
            budget += ac * atom_range(a).width();
        }
        if (ok && budget <= Rational(3) / 4) break;
        if (s > 512) throw ConstructionError("require_zero_affine: no feasible prescale");
    }

    // group terms by the scaled magnitude of their coefficient so each
    // distinct factor pays for one halving chain only
    std::map<Rational, std::vector<std::pair<int, Atom>>> groups;
    for (const auto& [c, a] : terms) {
        if (c == 0) continue;
        Rational ac = (c < 0 ? -c : c) / pow2(s);
        if (!is_dyadic(ac))
            throw ConstructionError("require_zero_affine(" + what +
                                    "): non-dyadic coefficient " + to_string(c));
        groups[ac].emplace_back(c > 0 ? 1 : -1, a);
    }

    Atom acc{one(), Rational(1)}; // residual 0
    const Rational chunk_limit = Rational(3) / 4;
    for (const auto& [factor, members] : groups) {
        Atom gsum{one(), Rational(1)};
        Rational gwidth = 0;
        auto flush = [&] {
            Atom part = atom_scale_dyadic(gsum, factor);
            acc = atom_add(acc, part);
            gsum = Atom{one(), Rational(1)};
            gwidth = 0;
        };
        for (const auto& [sign, a] : members) {
            Rational w = atom_range(a).width();
            if (gwidth != 0 && gwidth + w > chunk_limit) flush();
            gsum = sign > 0 ? atom_add(gsum, a) : atom_sub(gsum, a);
            gwidth += w;
            if (unsat_) return;
        }
        flush();
        if (unsat_) return;
    }
    acc.anchor -= c0 / pow2(s); // folding the constant is free

    // residual zero <=> value(acc.var) = acc.anchor
    if (!is_dyadic(acc.anchor))
        throw ConstructionError("require_zero_affine(" + what + "): non-dyadic pin");
    if (!ranges_[acc.var].contains(acc.anchor) || acc.anchor < inv_range_lo() ||
        acc.anchor > inv_range_hi()) {
        mark_unsat(what + ": pinned value " + to_string(acc.anchor) +
                   " is outside the reachable enclosure");
        return;
    }
    equate(acc.var, konst(acc.anchor), /*imposes=*/true);
}

void InvBuilder::mark_unsat(const std::string& reason) {
    if (!unsat_) {
        unsat_ = true;
        unsat_reason_ = reason;
    }
}

} // namespace npp
