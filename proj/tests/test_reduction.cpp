#include <doctest.h>

#include "npp/errors.hpp"
#include "npp/inv_builder.hpp"
#include "npp/reduction.hpp"
#include "test_helpers.hpp"

using namespace npp;
using namespace npp::testing;

namespace {

// forward(s) must satisfy the system and backward(forward(s)) must be s,
// exactly, for a known rational solution s of the source system.
void check_witness_roundtrip(const ReductionResult& red, const std::vector<Rational>& s) {
    auto image = apply_map(red.witness.forward, s);
    auto verdict = check_inv_assignment(red.system, image);
    CHECK(verdict.ok);
    auto back = apply_map(red.witness.backward, image);
    CHECK(back == s);
}

} // namespace

TEST_CASE("check_inv_assignment basics") {
    EtrInvSystem sys;
    auto x = sys.add_var("x");
    auto y = sys.add_var("y");
    sys.constraints.push_back(EtrInvSystem::Constraint::inv(x, y));

    CHECK(check_inv_assignment(sys, {Q(1, 2), Q(2)}).ok); // closed endpoints
    auto r = check_inv_assignment(sys, {Q(1), Q(101, 100)});
    CHECK_FALSE(r.ok);
    CHECK(r.kind == InvCheckResult::Violation::Constraint);
    CHECK(r.index == 0);
    auto rr = check_inv_assignment(sys, {Q(1), Q(3)});
    CHECK_FALSE(rr.ok);
    CHECK(rr.kind == InvCheckResult::Violation::Range);
    CHECK(rr.index == 1);
    CHECK_THROWS_AS(check_inv_assignment(sys, {Q(1)}), InputError);

    EtrInvSystem add3;
    auto a = add3.add_var("a");
    auto b = add3.add_var("b");
    auto c = add3.add_var("c");
    add3.constraints.push_back(EtrInvSystem::Constraint::add(a, b, c));
    CHECK(check_inv_assignment(add3, {Q(1, 2), Q(1, 2), Q(1)}).ok);
    CHECK_FALSE(check_inv_assignment(add3, {Q(1, 2), Q(1, 2), Q(2)}).ok);
}

TEST_CASE("inv system text round trip") {
    EtrInvSystem sys;
    auto x = sys.add_var("x");
    auto y = sys.add_var("y");
    auto z = sys.add_var("z");
    sys.constraints.push_back(EtrInvSystem::Constraint::add(x, y, z));
    sys.constraints.push_back(EtrInvSystem::Constraint::inv(x, y));
    EtrInvSystem back = parse_inv_system(print_inv_system(sys));
    CHECK(back.vars == sys.vars);
    CHECK(back.constraints == sys.constraints);
    CHECK_THROWS_AS(parse_inv_system("add x y z\n"), InputError);
    CHECK_THROWS_AS(parse_inv_system("var x\nfoo x\n"), InputError);
}

TEST_CASE("builder: constants, gadget checks, range failures") {
    InvBuilder b({"x"});
    auto one = b.one();
    CHECK(b.range(one) == Interval::point(1));
    auto c34 = b.konst(Q(3, 4));
    CHECK(b.range(c34) == Interval::point(Q(3, 4)));
    auto c98 = b.konst(Q(9, 8));
    CHECK(b.range(c98) == Interval::point(Q(9, 8)));
    CHECK_THROWS_AS(b.konst(Q(1, 3)), ConstructionError);  // not dyadic
    CHECK_THROWS_AS(b.konst(Q(1, 4)), ConstructionError);  // outside [1/2, 2]
    CHECK_THROWS_AS(b.konst(Q(9, 4)), ConstructionError);

    // every constant value is the solution of its own pin chain
    EtrInvSystem sys = b.take_system();
    std::vector<Rational> vals;
    for (const auto& name : sys.vars) {
        if (name == "one") vals.push_back(Q(1));
        else if (name == "half") vals.push_back(Q(1, 2));
        else if (name == "c_3_4") vals.push_back(Q(3, 4));
        else if (name == "c_3_2") vals.push_back(Q(3, 2));
        else if (name == "c_9_8") vals.push_back(Q(9, 8));
        else if (name == "c_5_8") vals.push_back(Q(5, 8));
        else if (name == "c_5_4") vals.push_back(Q(5, 4));
        else vals.push_back(Q(0)); // would fail the check below
    }
    CHECK(check_inv_assignment(sys, vals).ok);
}

TEST_CASE("builder: atom_halve range failure on wide atoms") {
    InvBuilder b({});
    auto v = b.fresh_var("wide", Interval{Q(1, 2), Q(2)}, rf_const(0, 1)); // fake value
    b.set_symbolic_checks(false);
    CHECK_THROWS_AS(b.atom_halve(b.atom(v)), ConstructionError);
}

TEST_CASE("reduce: x*x = 1 contains a self-inversion forcing one") {
    PolySystem src = parse_system("bound 2\nx*x - 1 = 0\n");
    ReductionResult red = reduce_poly_to_inv(src);
    REQUIRE_FALSE(red.unsatisfiable);
    bool has_self_inv = false;
    for (const auto& c : red.system.constraints)
        if (c.kind == EtrInvSystem::Constraint::Kind::Inv && c.a == c.b) has_self_inv = true;
    CHECK(has_self_inv);
    check_witness_roundtrip(red, {Q(1)});
    check_witness_roundtrip(red, {Q(-1)});
}

TEST_CASE("reduce: empty and degenerate systems") {
    ReductionResult red = reduce_poly_to_inv(parse_system("bound 1\n"));
    CHECK(red.system.vars.empty());
    CHECK(red.system.constraints.empty());
    CHECK(red.witness.forward.components.empty());

    red = reduce_poly_to_inv(parse_system("bound 1\n0 = 0\n"));
    CHECK(red.system.vars.empty());
    CHECK_FALSE(red.unsatisfiable);

    red = reduce_poly_to_inv(parse_system("bound 1\n5 = 0\n"));
    CHECK(red.unsatisfiable);
    REQUIRE(red.system.vars.size() == 1);
    REQUIRE(red.system.constraints.size() == 2);
    CHECK_FALSE(red.note.empty());
    // w*w = 1 and w + w = w have no common solution
    CHECK_FALSE(check_inv_assignment(red.system, {Q(1)}).ok);
}

TEST_CASE("reduce: interval-refuted system is marked unsatisfiable") {
    ReductionResult red = reduce_poly_to_inv(parse_system("bound 2\nx*x + 1 = 0\n"));
    CHECK(red.unsatisfiable);
    CHECK_FALSE(red.note.empty());
}

TEST_CASE("reduce: witness round trip on rational solutions") {
    // x - 1 = 0, solution x = 1
    auto red = reduce_poly_to_inv(parse_system("bound 2\nx - 1 = 0\n"));
    REQUIRE_FALSE(red.unsatisfiable);
    check_witness_roundtrip(red, {Q(1)});

    // x + y = 3, x*y = 2: solutions (1,2) and (2,1)
    auto red2 = reduce_poly_to_inv(parse_system("bound 4\nx + y - 3 = 0\nx*y - 2 = 0\n"));
    REQUIRE_FALSE(red2.unsatisfiable);
    check_witness_roundtrip(red2, {Q(1), Q(2)});
    check_witness_roundtrip(red2, {Q(2), Q(1)});

    // forward images of non-solutions must violate the system
    auto image = apply_map(red2.witness.forward, {Q(1), Q(1)});
    CHECK_FALSE(check_inv_assignment(red2.system, image).ok);
}

TEST_CASE("reduce: degree-4 torus system builds and round-trips") {
    PolySystem torus =
        parse_system("bound 12\n(x^2+y^2+z^2+99)^2 - 400*(x^2+y^2) = 0\n");
    ReductionResult red = reduce_poly_to_inv(torus);
    REQUIRE_FALSE(red.unsatisfiable);
    // rational point on the torus: outer equator (11, 0, 0)
    check_witness_roundtrip(red, {Q(11), Q(0), Q(0)});
    check_witness_roundtrip(red, {Q(0), Q(-9), Q(0)});
    // non-solution
    auto image = apply_map(red.witness.forward, {Q(0), Q(0), Q(0)});
    CHECK_FALSE(check_inv_assignment(red.system, image).ok);
}
