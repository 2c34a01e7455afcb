#include <doctest.h>

#include "npp/errors.hpp"
#include "npp/inv_array.hpp"
#include "npp/reduction.hpp"
#include "test_helpers.hpp"

using namespace npp;
using namespace npp::testing;
using Con = EtrInvSystem::Constraint;
using AC = EtrInvArray::Constraint;

namespace {

EtrInvSystem make_system(std::size_t nvars, std::vector<Con> cons) {
    EtrInvSystem s;
    for (std::size_t i = 0; i < nvars; ++i) s.add_var("x" + std::to_string(i + 1));
    s.constraints = std::move(cons);
    return s;
}

// forward(s) satisfies the array and backward(forward(s)) == s
void check_array_roundtrip(const SystemToArrayResult& res, const std::vector<Rational>& s) {
    auto flat = apply_map(res.witness.forward, s);
    REQUIRE(flat.size() == res.array.rows * res.array.cols);
    std::vector<std::vector<Rational>> cells(res.array.rows);
    for (std::size_t r = 0; r < res.array.rows; ++r)
        cells[r].assign(flat.begin() + r * res.array.cols,
                        flat.begin() + (r + 1) * res.array.cols);
    auto verdict = check_array_assignment(res.array, cells);
    CHECK(verdict.ok);
    CHECK(apply_map(res.witness.backward, flat) == s);
}

} // namespace

TEST_CASE("check_array_assignment basics") {
    EtrInvArray arr;
    arr.rows = 1;
    arr.cols = 2;
    arr.constraints = {AC::row_pair(0, 0, 1)};
    CHECK(check_array_assignment(arr, {{Q(2), Q(1, 2)}}).ok);
    CHECK_FALSE(check_array_assignment(arr, {{Q(1), Q(1)}}).ok);

    EtrInvArray tri;
    tri.rows = 1;
    tri.cols = 3;
    tri.constraints = {AC::row_triple(0, 0, 1, 2)};
    CHECK(check_array_assignment(tri, {{Q(1, 2), Q(1), Q(1)}}).ok);

    EtrInvArray inv;
    inv.rows = 2;
    inv.cols = 1;
    inv.constraints = {AC::col_inv(0, 0, 1)};
    auto r = check_array_assignment(inv, {{Q(1)}, {Q(3, 2)}});
    CHECK_FALSE(r.ok);
    CHECK(r.kind == ArrayCheckResult::Violation::Constraint);
    auto r2 = check_array_assignment(inv, {{Q(1)}, {Q(3)}});
    CHECK(r2.kind == ArrayCheckResult::Violation::Range);
    CHECK_THROWS_AS(check_array_assignment(inv, {{Q(1)}}), InputError);

    EtrInvArray bad;
    bad.rows = 1;
    bad.cols = 3;
    bad.constraints = {AC::row_triple(0, 0, 0, 1)};
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("normalize: chained inversions collapse") {
    // Inv(x,y), Inv(y,z): z is replaced by x
    auto sys = make_system(3, {Con::inv(0, 1), Con::inv(1, 2)});
    auto res = normalize_inv_system(sys);
    CHECK(res.system.vars == std::vector<std::string>{"x1", "x2"});
    REQUIRE(res.system.constraints.size() == 1);
    CHECK(res.system.constraints[0] == Con::inv(0, 1));
    // witness: forward drops z, backward reconstructs z = x
    for (Rational t : {Q(1, 2), Q(1), Q(4, 3)}) {
        auto fwd = apply_map(res.forward, {t, 1 / t, t});
        CHECK(check_inv_assignment(res.system, fwd).ok);
        auto back = apply_map(res.backward, fwd);
        CHECK(back == std::vector<Rational>{t, 1 / t, t});
    }
}

TEST_CASE("normalize: already normalized system is unchanged") {
    auto sys = make_system(3, {Con::add(0, 1, 2), Con::inv(0, 1)});
    auto res = normalize_inv_system(sys);
    CHECK(res.system.vars == sys.vars);
    CHECK(res.system.constraints == sys.constraints);
    CHECK(res.forward.components.size() == 3);
}

TEST_CASE("normalize: repeated Add operands split through inversion chains") {
    // Add(x,x,z) -> Add(x,x',z), Inv(x,w), Inv(w,x')
    auto sys = make_system(2, {Con::add(0, 0, 1)});
    auto res = normalize_inv_system(sys);
    REQUIRE(res.system.vars.size() == 4); // x, z, x_w, x_c
    REQUIRE(res.system.constraints.size() == 3);
    CHECK(res.system.constraints[0].kind == Con::Kind::Add);
    CHECK(res.system.constraints[0].a != res.system.constraints[0].b);
    CHECK(res.system.constraints[1].kind == Con::Kind::Inv);
    CHECK(res.system.constraints[2].kind == Con::Kind::Inv);
    // solutions (x, 2x) for x in [1/2, 1] map across exactly
    for (Rational x : {Q(1, 2), Q(3, 4), Q(1)}) {
        auto fwd = apply_map(res.forward, {x, 2 * x});
        CHECK(check_inv_assignment(res.system, fwd).ok);
        CHECK(apply_map(res.backward, fwd) == std::vector<Rational>{x, 2 * x});
    }
    // non-solution violates
    auto bad = apply_map(res.forward, {Q(1, 2), Q(3, 2)});
    CHECK_FALSE(check_inv_assignment(res.system, bad).ok);
}

TEST_CASE("normalize: split when the variable is already inversion-matched") {
    // Inv(x,u), Add(x,x,z): the copy must attach to u, not re-chain x
    auto sys = make_system(3, {Con::inv(0, 1), Con::add(0, 0, 2)});
    auto res = normalize_inv_system(sys);
    // x in exactly one... u gains the copy edge; system must stay convertible
    auto arrres = system_to_array(res.system);
    for (Rational x : {Q(1, 2), Q(3, 4), Q(1)}) {
        auto fwd = apply_map(res.forward, {x, 1 / x, 2 * x});
        CHECK(check_inv_assignment(res.system, fwd).ok);
        CHECK(apply_map(res.backward, fwd) ==
              std::vector<Rational>{x, 1 / x, 2 * x});
        check_array_roundtrip(arrres, fwd);
    }
}

TEST_CASE("system_to_array: self-inversion pins everything") {
    auto sys = make_system(1, {Con::inv(0, 0)});
    auto res = system_to_array(sys);
    CHECK(res.array.rows == 3);
    CHECK(res.array.cols == 2);
    res.array.validate();
    // unique solution y=1, alpha=3/2, beta=delta=1, gamma=epsilon=3/2
    std::vector<std::vector<Rational>> cells = {
        {Q(1), Q(3, 2)}, {Q(1), Q(3, 2)}, {Q(1), Q(3, 2)}};
    CHECK(check_array_assignment(res.array, cells).ok);
    check_array_roundtrip(res, {Q(1)});
    // perturbing y breaks it
    cells[0][0] = Q(2);
    CHECK_FALSE(check_array_assignment(res.array, cells).ok);
}

TEST_CASE("system_to_array: two-variable inversion family") {
    auto sys = make_system(2, {Con::inv(0, 1)});
    auto res = system_to_array(sys);
    CHECK(res.array.cols == 4);
    res.array.validate();
    for (Rational t : {Q(1, 2), Q(2, 3), Q(1), Q(3, 2), Q(2)})
        check_array_roundtrip(res, {t, 1 / t});
    // y-cells that do not multiply to 1 must fail
    auto flat = apply_map(res.witness.forward, {Q(1), Q(1)});
    std::vector<std::vector<Rational>> cells(3);
    for (std::size_t r = 0; r < 3; ++r)
        cells[r].assign(flat.begin() + r * 4, flat.begin() + (r + 1) * 4);
    cells[0][1] = Q(3, 2); // y_2 != 1/y_1 now
    CHECK_FALSE(check_array_assignment(res.array, cells).ok);
}

TEST_CASE("system_to_array: empty system leaves y free") {
    auto sys = make_system(1, {});
    auto res = system_to_array(sys);
    CHECK(res.array.cols == 2);
    // only pinning constraints: 1 row-pair + beta/delta col-invs + gamma/epsilon pins
    CHECK(res.array.constraints.size() == 5);
    for (Rational t : {Q(1, 2), Q(1), Q(17, 16), Q(2)}) check_array_roundtrip(res, {t});
}

TEST_CASE("system_to_array: add plus inversion, pinned family") {
    auto sys = make_system(3, {Con::add(0, 1, 2), Con::inv(0, 1)});
    auto res = system_to_array(sys);
    CHECK(res.array.cols == 6);
    res.array.validate();
    // x + 1/x = z forces x = 1, z = 2 within the range
    check_array_roundtrip(res, {Q(1), Q(1), Q(2)});
    std::size_t n_add = 0, n_inv = 0;
    for (const auto& c : sys.constraints)
        (c.kind == Con::Kind::Add ? n_add : n_inv)++;
    CHECK(res.array.constraints.size() <= 2 * 3 + n_add + 6 * n_inv + 4 * 3);
}

TEST_CASE("system_to_array: precondition errors") {
    CHECK_THROWS_AS(system_to_array(make_system(2, {Con::add(0, 0, 1)})), InputError);
    // odd inversion cycle cannot be oriented
    CHECK_THROWS_AS(
        system_to_array(make_system(3, {Con::inv(0, 1), Con::inv(1, 2), Con::inv(0, 2)})),
        InputError);
    // self-loop plus an edge on the same variable
    CHECK_THROWS_AS(system_to_array(make_system(2, {Con::inv(0, 0), Con::inv(0, 1)})),
                    InputError);
}

TEST_CASE("array JSON round trip") {
    auto sys = make_system(3, {Con::add(0, 1, 2), Con::inv(0, 1)});
    auto res = system_to_array(sys);
    EtrInvArray back = array_from_json(array_to_json(res.array));
    CHECK(back.rows == res.array.rows);
    CHECK(back.cols == res.array.cols);
    CHECK(back.constraints == res.array.constraints);
    CHECK(back.cell_names == res.array.cell_names);
    CHECK(back.legend == res.array.legend);
    CHECK_THROWS_AS(array_from_json("{"), InputError);
    CHECK_THROWS_AS(array_from_json("{\"m\":1,\"n\":1,\"constraints\":[{\"type\":\"xyz\"}]}"),
                    InputError);
}

TEST_CASE("normalized reduction output converts to an array") {
    // end-to-end shape: x*y = 1 via the polynomial route
    PolySystem src = parse_system("bound 2\nx*y - 1 = 0\n");
    auto red = reduce_poly_to_inv(src);
    auto norm = normalize_inv_system(red.system);
    auto arr = system_to_array(norm.system);
    CHECK(arr.array.rows == 3);
    CHECK(arr.array.cols == 2 * norm.system.vars.size());
    arr.array.validate();
    // a known rational solution of the source flows through all three maps
    std::vector<Rational> s = {Q(1, 2), Q(2)};
    auto inv_assign = apply_map(red.witness.forward, s);
    auto norm_assign = apply_map(norm.forward, inv_assign);
    CHECK(check_inv_assignment(norm.system, norm_assign).ok);
    check_array_roundtrip(arr, norm_assign);
}
