#include <doctest.h>

#include "npp/errors.hpp"
#include "npp/hull.hpp"
#include "npp/instance.hpp"
#include "test_helpers.hpp"

using namespace npp;
using namespace npp::testing;
using AC = EtrInvArray::Constraint;

namespace {

EtrInvArray bare_array(std::size_t m, std::size_t n, std::vector<AC> cons = {}) {
    EtrInvArray a;
    a.rows = m;
    a.cols = n;
    a.constraints = std::move(cons);
    return a;
}

} // namespace

TEST_CASE("build_instance: 1x1 shape and counts") {
    NestedInstance inst = build_instance(bare_array(1, 1));
    CHECK(inst.dim() == 4);
    CHECK(inst.outer.size() == 6);  // (n+2)(m+1)
    CHECK(inst.facets.size() == 5); // n+m+3
    CHECK(inst.k == 5);             // mn+2m+2
    CHECK(inst.inner.size() == 6);  // 4 frame + y11 + z11
    CHECK(inst.segments.size() == 1);

    // u_{0,1} = e1 - J in coordinates (e1, e2, f1, g1)
    const auto* u01 = inst.find_outer("u_0_1");
    REQUIRE(u01);
    CHECK(u01->p == P({Q(1), Q(0), Q(0), Q(-1)}));
    const auto* v11 = inst.find_outer("v_1_1");
    REQUIRE(v11);
    CHECK(v11->p == P({Q(0), Q(0), Q(1), Q(2)}));
}

TEST_CASE("build_instance: explicit gadget coordinates") {
    // m=1, n=2 with a row pair: p = (0,0,1/2,1/2,5/4) in (e1,e2,f1,f2,g1)
    NestedInstance inst = build_instance(bare_array(1, 2, {AC::row_pair(0, 0, 1)}));
    REQUIRE(inst.inner.back().role == "rowpair");
    CHECK(inst.inner.back().p == P({Q(0), Q(0), Q(1, 2), Q(1, 2), Q(5, 4)}));
    CHECK(inst.inner.back().constraint_ref == 0);

    // m=2, n=1 with a column inversion: r = (0,0,1,0,0)
    NestedInstance inst2 = build_instance(bare_array(2, 1, {AC::col_inv(0, 0, 1)}));
    REQUIRE(inst2.inner.back().role == "colinv");
    CHECK(inst2.inner.back().p == P({Q(0), Q(0), Q(1), Q(0), Q(0)}));

    // m=1, n=3 with a row triple: q = (0,0,1/3,1/3,1/3,5/6)
    NestedInstance inst3 = build_instance(bare_array(1, 3, {AC::row_triple(0, 0, 1, 2)}));
    REQUIRE(inst3.inner.back().role == "rowtriple");
    CHECK(inst3.inner.back().p == P({Q(0), Q(0), Q(1, 3), Q(1, 3), Q(1, 3), Q(5, 6)}));
}

TEST_CASE("u_0_1 satisfies the facet list; off-carrier and off-box points fail") {
    NestedInstance inst = build_instance(bare_array(1, 1));
    std::vector<Halfspace> all;
    all.push_back(inst.carrier);
    for (const auto& h : inst.facets) all.push_back(h);

    CHECK(satisfies(inst.find_outer("u_0_1")->p, all).ok);
    auto zero = zero_point(4);
    auto rep = satisfies(zero, all);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_violated == 0); // the carrier equality

    // one unit beyond the end of sigma_{1,1}: v_{1,1} + g_1 violates <J,x> <= 3-m
    Point beyond = inst.find_outer("v_1_1")->p;
    beyond[inst.g(1)] += 1;
    auto rep2 = satisfies(beyond, all);
    CHECK_FALSE(rep2.ok);
    CHECK(all[rep2.first_violated].rel == Relation::Le);
}

TEST_CASE("validate_outer passes for small shapes, catches perturbations") {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {2, 2}, {1, 3}, {3, 1}}) {
        NestedInstance inst = build_instance(bare_array(m, n));
        OuterReport rep = validate_outer(inst);
        CHECK(rep.ok);
        CHECK(rep.count_ok);
        CHECK(rep.facet_count_ok);
        CHECK(rep.rank == n + m + 1);
        CHECK(rep.extremality_method == "lp");
    }
    // (3,4): vertex count 24, rank 8
    NestedInstance big = build_instance(bare_array(3, 4));
    OuterReport rep = validate_outer(big);
    CHECK(rep.ok);
    CHECK(rep.outer_count == 24);
    CHECK(rep.rank == 8);

    // perturb one vertex off the carrier hyperplane
    NestedInstance bad = build_instance(bare_array(1, 1));
    bad.outer[0].p[0] += 1;
    OuterReport brep = validate_outer(bad);
    CHECK_FALSE(brep.ok);
    CHECK_FALSE(brep.outer_on_facets_ok);
    CHECK(brep.first_failure.find("u_0_1") != std::string::npos);
}

TEST_CASE("validate_outer: box certificate route agrees with the LP route") {
    NestedInstance inst = build_instance(bare_array(2, 3, {AC::row_pair(0, 0, 1)}));
    ValidateOptions lp{ValidateOptions::Extremality::Lp};
    ValidateOptions box{ValidateOptions::Extremality::BoxCertificate};
    OuterReport r1 = validate_outer(inst, lp);
    OuterReport r2 = validate_outer(inst, box);
    CHECK(r1.ok);
    CHECK(r2.ok);
    CHECK(r2.extremality_method == "box-certificate");

    // a duplicated vertex breaks both routes
    NestedInstance dup = inst;
    dup.outer.push_back(dup.outer.back());
    CHECK_FALSE(validate_outer(dup, lp).extremal_ok);
    CHECK_FALSE(validate_outer(dup, box).extremal_ok);
}

TEST_CASE("instance invariants for m,n <= 4") {
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            std::vector<AC> cons;
            if (n >= 2) cons.push_back(AC::row_pair(0, 0, 1));
            if (n >= 3) cons.push_back(AC::row_triple(m - 1, 0, 1, 2));
            if (m >= 2) cons.push_back(AC::col_inv(n - 1, 0, 1));
            NestedInstance inst = build_instance(bare_array(m, n, cons));
            CHECK(inst.outer.size() == (n + 2) * (m + 1));
            CHECK(inst.facets.size() == n + m + 3);
            CHECK(inst.inner.size() == 2 * m + 2 + 2 * m * n + cons.size());
            CHECK(inst.k == m * n + 2 * m + 2);
            OuterReport rep = validate_outer(inst);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("projector points: central projection onto the segment") {
    // the line from u_{0,1} through y_{i,j} meets sigma at parameter 2,
    // the line from u_{i,1} through y_{i,j} at parameter 1/2
    NestedInstance inst = build_instance(bare_array(2, 2));
    for (std::size_t i = 1; i <= 2; ++i) {
        for (std::size_t j = 1; j <= 2; ++j) {
            Point y = zero_point(inst.dim());
            for (const auto& v : inst.inner)
                if (v.label == "y_" + std::to_string(i) + "_" + std::to_string(j)) y = v.p;
            const Point& u0 = inst.find_outer("u_0_1")->p;
            const Point& ui = inst.find_outer("u_" + std::to_string(i) + "_1")->p;
            Point at2 = inst.segment_point(i, j, Q(2));
            Point athalf = inst.segment_point(i, j, Q(1, 2));
            // y = (1/3) u0 + (2/3) seg(2) and y = (1/3) ui + (2/3) seg(1/2)
            CHECK(Q(1, 3) * u0 + Q(2, 3) * at2 == y);
            CHECK(Q(1, 3) * ui + Q(2, 3) * athalf == y);
        }
    }
}

TEST_CASE("gadget points lie in the hull of their segments") {
    NestedInstance inst = build_instance(
        bare_array(2, 3, {AC::row_pair(0, 0, 1), AC::row_triple(1, 0, 1, 2),
                          AC::col_inv(2, 0, 1)}));
    for (const auto& v : inst.inner) {
        if (v.constraint_ref < 0) continue;
        const auto& c = inst.array_constraints[v.constraint_ref];
        std::vector<Point> gens;
        auto add_segment = [&](std::size_t i, std::size_t j) {
            gens.push_back(inst.segment_point(i, j, Q(-1))); // full segment endpoints
            gens.push_back(inst.segment_point(i, j, Q(2)));
        };
        using Kind = AC::Kind;
        if (c.kind == Kind::RowPair) {
            add_segment(c.row_or_col + 1, c.a + 1);
            add_segment(c.row_or_col + 1, c.b + 1);
        } else if (c.kind == Kind::RowTriple) {
            add_segment(c.row_or_col + 1, c.a + 1);
            add_segment(c.row_or_col + 1, c.b + 1);
            add_segment(c.row_or_col + 1, c.c + 1);
        } else {
            add_segment(c.a + 1, c.row_or_col + 1);
            if (c.b != c.a) add_segment(c.b + 1, c.row_or_col + 1);
        }
        auto cert = in_hull(v.p, gens);
        CHECK(cert.inside());
        CHECK(verify_certificate(cert, v.p, gens));
    }
}

TEST_CASE("instance JSON round trip") {
    NestedInstance inst = build_instance(
        bare_array(2, 2, {AC::row_pair(0, 0, 1), AC::col_inv(1, 0, 1)}));
    std::string text = instance_to_json(inst);
    NestedInstance back = instance_from_json(text);
    CHECK(back.m == inst.m);
    CHECK(back.n == inst.n);
    CHECK(back.k == inst.k);
    REQUIRE(back.outer.size() == inst.outer.size());
    for (std::size_t i = 0; i < back.outer.size(); ++i) {
        CHECK(back.outer[i].label == inst.outer[i].label);
        CHECK(back.outer[i].p == inst.outer[i].p);
    }
    REQUIRE(back.inner.size() == inst.inner.size());
    for (std::size_t i = 0; i < back.inner.size(); ++i) {
        CHECK(back.inner[i].role == inst.inner[i].role);
        CHECK(back.inner[i].p == inst.inner[i].p);
        CHECK(back.inner[i].constraint_ref == inst.inner[i].constraint_ref);
    }
    CHECK(back.carrier.rel == Relation::Eq);
    CHECK(back.facets.size() == inst.facets.size());
    CHECK(back.segments.size() == inst.segments.size());
    CHECK(back.array_constraints == inst.array_constraints);
    // emission is deterministic
    CHECK(instance_to_json(back) == text);
    CHECK_THROWS_AS(instance_from_json("{]"), InputError);
}
