#include "npp/instance.hpp"

#include <cstdint>
#include <cstring>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "npp/errors.hpp"
#include "npp/hull.hpp"
#include "npp/jsonio.hpp"

namespace npp {

namespace {

std::string idx2(const std::string& base, std::size_t a, std::size_t b) {
    return base + "_" + std::to_string(a) + "_" + std::to_string(b);
}

} // namespace

Point NestedInstance::segment_point(std::size_t i, std::size_t j, const Rational& alpha) const {
    // f_j + (1 + alpha) g_i - J
    Point p = zero_point(dim());
    p[f(j)] = 1;
    for (std::size_t gi = 1; gi <= m; ++gi) p[g(gi)] = -1;
    p[g(i)] += 1 + alpha;
    return p;
}

const NestedInstance::OuterVertex* NestedInstance::find_outer(const std::string& label) const {
    for (const auto& v : outer)
        if (v.label == label) return &v;
    return nullptr;
}

NestedInstance build_instance(const EtrInvArray& array) {
    array.validate();
    NestedInstance inst;
    inst.m = array.rows;
    inst.n = array.cols;
    inst.k = inst.m * inst.n + 2 * inst.m + 2;
    inst.array_constraints = array.constraints;
    const std::size_t d = inst.dim();
    const std::size_t m = inst.m, n = inst.n;

    Point minusJ = zero_point(d);
    for (std::size_t i = 1; i <= m; ++i) minusJ[inst.g(i)] = -1;

    auto u_point = [&](std::size_t i, std::size_t which) {
        Point p = minusJ;
        p[inst.e(which)] = 1;
        if (i > 0) p[inst.g(i)] += 3;
        return p;
    };
    auto v_point = [&](std::size_t i, std::size_t j) {
        Point p = minusJ;
        p[inst.f(j)] = 1;
        if (i > 0) p[inst.g(i)] += 3;
        return p;
    };

    // outer vertices: the orthogonal frames U1, U2, V1..Vn
    for (std::size_t which = 1; which <= 2; ++which)
        for (std::size_t i = 0; i <= m; ++i)
            inst.outer.push_back({idx2("u", i, which), u_point(i, which)});
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            inst.outer.push_back({idx2("v", i, j), v_point(i, j)});

    // carrier hyperplane <e1 + e2 + f_1 + .. + f_n, x> = 1
    {
        Point nrm = zero_point(d);
        nrm[inst.e(1)] = 1;
        nrm[inst.e(2)] = 1;
        for (std::size_t j = 1; j <= n; ++j) nrm[inst.f(j)] = 1;
        inst.carrier = {std::move(nrm), Rational(1), Relation::Eq};
    }
    // facets: e_i >= 0, f_j >= 0, g_i >= -1, <J, x> <= 3 - m
    for (std::size_t which = 1; which <= 2; ++which) {
        Point nrm = zero_point(d);
        nrm[inst.e(which)] = 1;
        inst.facets.push_back({std::move(nrm), Rational(0), Relation::Ge});
    }
    for (std::size_t j = 1; j <= n; ++j) {
        Point nrm = zero_point(d);
        nrm[inst.f(j)] = 1;
        inst.facets.push_back({std::move(nrm), Rational(0), Relation::Ge});
    }
    for (std::size_t i = 1; i <= m; ++i) {
        Point nrm = zero_point(d);
        nrm[inst.g(i)] = 1;
        inst.facets.push_back({std::move(nrm), Rational(-1), Relation::Ge});
    }
    {
        Point nrm = zero_point(d);
        for (std::size_t i = 1; i <= m; ++i) nrm[inst.g(i)] = 1;
        inst.facets.push_back({std::move(nrm), Rational(3) - Rational(m), Relation::Le});
    }

    // inner vertices: frames, projector points, one gadget point per constraint
    for (std::size_t which = 1; which <= 2; ++which)
        for (std::size_t i = 0; i <= m; ++i)
            inst.inner.push_back({idx2("u", i, which), "frame", u_point(i, which), -1});
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            // y_ij = (1/3) e1 + (2/3) f_j + 2 g_i - J
            Point y = minusJ;
            y[inst.e(1)] = Rational(1) / 3;
            y[inst.f(j)] = Rational(2) / 3;
            y[inst.g(i)] += 2;
            inst.inner.push_back({idx2("y", i, j), "projector_y", std::move(y), -1});
            Point z = minusJ;
            z[inst.e(2)] = Rational(1) / 3;
            z[inst.f(j)] = Rational(2) / 3;
            z[inst.g(i)] += 2;
            inst.inner.push_back({idx2("z", i, j), "projector_z", std::move(z), -1});
        }
    }
    for (std::size_t ci = 0; ci < array.constraints.size(); ++ci) {
        const auto& c = array.constraints[ci];
        Point p = minusJ;
        std::string label, role;
        using Kind = EtrInvArray::Constraint::Kind;
        switch (c.kind) {
            case Kind::RowPair:
                // (1/2) f_j + (1/2) f_k + (9/4) g_i - J
                p[inst.f(c.a + 1)] = Rational(1) / 2;
                p[inst.f(c.b + 1)] = Rational(1) / 2;
                p[inst.g(c.row_or_col + 1)] += Rational(9) / 4;
                role = "rowpair";
                label = "p_" + std::to_string(c.row_or_col + 1) + "_" + std::to_string(c.a + 1) +
                        "_" + std::to_string(c.b + 1);
                break;
            case Kind::RowTriple:
                p[inst.f(c.a + 1)] = Rational(1) / 3;
                p[inst.f(c.b + 1)] = Rational(1) / 3;
                p[inst.f(c.c + 1)] = Rational(1) / 3;
                p[inst.g(c.row_or_col + 1)] += Rational(11) / 6;
                role = "rowtriple";
                label = "q_" + std::to_string(c.row_or_col + 1) + "_" + std::to_string(c.a + 1) +
                        "_" + std::to_string(c.b + 1) + "_" + std::to_string(c.c + 1);
                break;
            case Kind::ColInv:
                // f_k + g_i + g_j - J (i = j allowed: f_k + 2 g_i - J)
                p[inst.f(c.row_or_col + 1)] = 1;
                p[inst.g(c.a + 1)] += 1;
                p[inst.g(c.b + 1)] += 1;
                role = "colinv";
                label = "r_" + std::to_string(c.row_or_col + 1) + "_" + std::to_string(c.a + 1) +
                        "_" + std::to_string(c.b + 1);
                break;
        }
        inst.inner.push_back({std::move(label), std::move(role), std::move(p),
                              static_cast<std::ptrdiff_t>(ci)});
    }

    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            inst.segments.push_back({idx2("sigma", i, j), i, j});
    return inst;
}

// --------------------------------------------------------------------------
// validation

namespace {

struct SparseFacet {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational offset;
    Relation rel;

    bool holds(const Point& p) const {
        Rational v = 0;
        for (const auto& [i, c] : terms) v += c * p[i];
        switch (rel) {
            case Relation::Ge: return v >= offset;
            case Relation::Le: return v <= offset;
            default: return v == offset;
        }
    }
};

SparseFacet sparsify(const Halfspace& h) {
    SparseFacet f;
    for (std::size_t i = 0; i < h.normal.dim(); ++i)
        if (h.normal[i] != 0) f.terms.emplace_back(i, h.normal[i]);
    f.offset = h.offset;
    f.rel = h.rel;
    return f;
}

std::size_t hash_point(const Point& p) {
    std::size_t h = 1469598103934665603ull;
    for (const auto& c : p.coords) {
        double d = c.convert_to<double>();
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        h = (h ^ bits) * 1099511628211ull;
    }
    return h;
}

} // namespace

OuterReport validate_outer(const NestedInstance& inst, const ValidateOptions& opts) {
    OuterReport rep;
    const std::size_t m = inst.m, n = inst.n;

    rep.outer_count = inst.outer.size();
    rep.count_ok = rep.outer_count == (n + 2) * (m + 1);
    rep.facet_count = inst.facets.size();
    rep.facet_count_ok = rep.facet_count == n + m + 3;

    // facet satisfaction, sparse evaluation
    std::vector<SparseFacet> sparse;
    sparse.push_back(sparsify(inst.carrier));
    for (const auto& h : inst.facets) sparse.push_back(sparsify(h));
    rep.outer_on_facets_ok = true;
    for (const auto& v : inst.outer) {
        for (const auto& f : sparse) {
            if (!f.holds(v.p)) {
                rep.outer_on_facets_ok = false;
                if (rep.first_failure.empty())
                    rep.first_failure = v.label + ": violates a facet constraint";
                break;
            }
        }
        if (!rep.outer_on_facets_ok) break;
    }
    rep.inner_inside_ok = true;
    for (const auto& v : inst.inner) {
        for (const auto& f : sparse) {
            if (!f.holds(v.p)) {
                rep.inner_inside_ok = false;
                if (rep.first_failure.empty())
                    rep.first_failure = v.label + ": inner vertex outside the outer polytope";
                break;
            }
        }
        if (!rep.inner_inside_ok) break;
    }

    // affine rank
    {
        std::vector<Point> pts;
        pts.reserve(inst.outer.size());
        for (const auto& v : inst.outer) pts.push_back(v.p);
        rep.rank = pts.empty() ? 0 : affine_rank(pts);
        rep.rank_ok = rep.rank == n + m + 1;

        // extremality of every outer vertex
        bool use_lp = opts.extremality == ValidateOptions::Extremality::Lp;
        if (opts.extremality == ValidateOptions::Extremality::Auto)
            use_lp = inst.outer.size() * inst.dim() <= 20000;
        if (use_lp) {
            rep.extremality_method = "lp";
            rep.extremal_ok = true;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (!is_vertex(i, pts)) {
                    rep.extremal_ok = false;
                    if (rep.first_failure.empty())
                        rep.first_failure = inst.outer[i].label + ": not extremal";
                    break;
                }
            }
        } else {
            // exact box certificate: a point that attains the coordinatewise
            // min or max of the set in every coordinate, and is distinct from
            // all others, is a vertex of the hull.
            rep.extremality_method = "box-certificate";
            rep.extremal_ok = !pts.empty();
            const std::size_t d = inst.dim();
            std::vector<Rational> lo(pts[0].coords), hi(pts[0].coords);
            for (const auto& p : pts)
                for (std::size_t c = 0; c < d; ++c) {
                    if (p[c] < lo[c]) lo[c] = p[c];
                    if (p[c] > hi[c]) hi[c] = p[c];
                }
            for (std::size_t i = 0; i < pts.size() && rep.extremal_ok; ++i)
                for (std::size_t c = 0; c < d; ++c)
                    if (pts[i][c] != lo[c] && pts[i][c] != hi[c]) {
                        rep.extremal_ok = false;
                        if (rep.first_failure.empty())
                            rep.first_failure =
                                inst.outer[i].label + ": box-extremality certificate failed";
                        break;
                    }
            if (rep.extremal_ok) {
                std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    buckets[hash_point(pts[i])].push_back(i);
                for (const auto& [h, idxs] : buckets) {
                    for (std::size_t a = 0; a + 1 < idxs.size() && rep.extremal_ok; ++a)
                        for (std::size_t b = a + 1; b < idxs.size(); ++b)
                            if (pts[idxs[a]] == pts[idxs[b]]) {
                                rep.extremal_ok = false;
                                if (rep.first_failure.empty())
                                    rep.first_failure = inst.outer[idxs[a]].label +
                                                        ": duplicate outer vertex";
                                break;
                            }
                }
            }
        }
    }

    rep.ok = rep.count_ok && rep.facet_count_ok && rep.rank_ok && rep.outer_on_facets_ok &&
             rep.inner_inside_ok && rep.extremal_ok;
    return rep;
}

// --------------------------------------------------------------------------
// JSON

void instance_to_json(const NestedInstance& inst, std::ostream& out) {
    JsonWriter w(out);
    w.obj_open();
    w.key("dim").num(inst.dim()).comma();
    w.key("m").num(inst.m).comma();
    w.key("n").num(inst.n).comma();
    w.key("outer").obj_open();
    w.key("vertices").arr_open();
    for (std::size_t i = 0; i < inst.outer.size(); ++i) {
        if (i) w.comma();
        w.obj_open().key("label").str(inst.outer[i].label).comma().key("coords").point(
            inst.outer[i].p);
        w.obj_close();
    }
    w.arr_close().comma().key("facets").arr_open();
    auto facet = [&](const Halfspace& h) {
        w.obj_open().key("normal").point(h.normal).comma();
        w.key("offset").rat(h.offset).comma();
        w.key("relation").str(relation_symbol(h.rel));
        w.obj_close();
    };
    facet(inst.carrier);
    for (const auto& h : inst.facets) {
        w.comma();
        facet(h);
    }
    w.arr_close().obj_close().comma();

    w.key("inner").obj_open().key("vertices").arr_open();
    for (std::size_t i = 0; i < inst.inner.size(); ++i) {
        if (i) w.comma();
        const auto& v = inst.inner[i];
        w.obj_open().key("label").str(v.label).comma();
        w.key("role").str(v.role).comma();
        w.key("coords").point(v.p).comma();
        w.key("constraint_ref");
        if (v.constraint_ref < 0)
            w.null();
        else
            w.num(v.constraint_ref);
        w.obj_close();
    }
    w.arr_close().obj_close().comma();

    w.key("k").num(inst.k).comma();
    w.key("segments").arr_open();
    for (std::size_t s = 0; s < inst.segments.size(); ++s) {
        if (s) w.comma();
        const auto& seg = inst.segments[s];
        w.obj_open().key("label").str(seg.label).comma();
        w.key("row").num(seg.i).comma().key("col").num(seg.j).comma();
        w.key("endpoints").arr_open();
        w.str(idx2("v", 0, seg.j)).comma().str(idx2("v", seg.i, seg.j));
        w.arr_close().comma();
        w.key("second_half").arr_open().rat(Rational(1) / 2).comma().rat(Rational(2)).arr_close();
        w.obj_close();
    }
    w.arr_close().comma();

    // constraint table so verdicts can reference gadget origins
    w.key("constraints").raw(array_constraints_to_json(inst.array_constraints).c_str());
    w.obj_close();
}

std::string instance_to_json(const NestedInstance& inst) {
    std::ostringstream out;
    instance_to_json(inst, out);
    return out.str();
}

NestedInstance instance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("instance JSON: ") + e.what());
    }
    NestedInstance inst;
    try {
        inst.m = j.at("m").get<std::size_t>();
        inst.n = j.at("n").get<std::size_t>();
        inst.k = j.at("k").get<std::size_t>();
        auto parse_point = [](const nlohmann::json& arr) {
            Point p;
            for (const auto& c : arr) p.coords.push_back(parse_rational(c.get<std::string>()));
            return p;
        };
        for (const auto& v : j.at("outer").at("vertices"))
            inst.outer.push_back(
                {v.at("label").get<std::string>(), parse_point(v.at("coords"))});
        bool first_facet = true;
        for (const auto& f : j.at("outer").at("facets")) {
            Halfspace h;
            h.normal = parse_point(f.at("normal"));
            h.offset = parse_rational(f.at("offset").get<std::string>());
            std::string rel = f.at("relation").get<std::string>();
            h.rel = rel == ">=" ? Relation::Ge : rel == "<=" ? Relation::Le : Relation::Eq;
            if (first_facet && h.rel == Relation::Eq) {
                inst.carrier = std::move(h);
                first_facet = false;
                continue;
            }
            first_facet = false;
            inst.facets.push_back(std::move(h));
        }
        for (const auto& v : j.at("inner").at("vertices")) {
            NestedInstance::InnerVertex iv;
            iv.label = v.at("label").get<std::string>();
            iv.role = v.at("role").get<std::string>();
            iv.p = parse_point(v.at("coords"));
            iv.constraint_ref =
                v.at("constraint_ref").is_null() ? -1 : v.at("constraint_ref").get<std::ptrdiff_t>();
            inst.inner.push_back(std::move(iv));
        }
        for (const auto& s : j.at("segments"))
            inst.segments.push_back({s.at("label").get<std::string>(),
                                     s.at("row").get<std::size_t>(),
                                     s.at("col").get<std::size_t>()});
        if (j.contains("constraints")) {
            EtrInvArray tmp = array_from_json(
                std::string("{\"m\":") + std::to_string(inst.m) + ",\"n\":" +
                std::to_string(inst.n) + ",\"constraints\":" + j.at("constraints").dump() + "}");
            inst.array_constraints = std::move(tmp.constraints);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("instance JSON: ") + e.what());
    }
    return inst;
}

} // namespace npp
