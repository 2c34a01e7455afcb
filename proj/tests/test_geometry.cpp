#include <doctest.h>

#include <algorithm>
#include <random>

#include "npp/errors.hpp"
#include "npp/hull.hpp"
#include "npp/rational.hpp"
#include "test_helpers.hpp"

using namespace npp;
using namespace npp::testing;

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(Q(3)) == "3");
    CHECK(to_string(Q(-3, 6)) == "-1/2");
    CHECK(parse_rational("4/6") == Q(2, 3));
    CHECK(parse_rational("-7") == Q(-7));
    CHECK(parse_rational("-3/4") == Q(-3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
    CHECK(is_dyadic(Q(5, 16)));
    CHECK_FALSE(is_dyadic(Q(1, 3)));
    CHECK(pow2(-3) == Q(1, 8));
    CHECK(pow2_at_least(Q(5)) == Q(8));
    CHECK(pow2_at_least(Q(1, 3)) == Q(1, 2));
    CHECK(round_denominator(Q(355, 113), 64) == Q(22, 7));
}

TEST_CASE("in_hull frozen examples") {
    // Boundary configuration with alpha1*alpha2 = 2*(1/2) = 1.
    auto cert = in_hull(P({Q(0), Q(0)}), {P({Q(2), Q(-1)}), P({Q(-1), Q(1, 2)})});
    REQUIRE(cert.inside());
    std::vector<Rational> coef(2, Q(0));
    for (auto& [i, c] : cert.combination) coef[i] = c;
    CHECK(coef[0] == Q(1, 3));
    CHECK(coef[1] == Q(2, 3));

    // Symmetric case alpha1 = alpha2 = 1.
    cert = in_hull(P({Q(0), Q(0)}), {P({Q(1), Q(-1)}), P({Q(-1), Q(1)})});
    REQUIRE(cert.inside());
    coef.assign(2, Q(0));
    for (auto& [i, c] : cert.combination) coef[i] = c;
    CHECK(coef[0] == Q(1, 2));
    CHECK(coef[1] == Q(1, 2));

    // 2-D cross-product oracle: cross((1,-1),(-1,1/2)) = -1/2 != 0, so the
    // origin is not on the segment.
    Rational cross = Q(1) * Q(1, 2) - Q(-1) * Q(-1);
    REQUIRE(cross != 0);
    auto gens = std::vector<Point>{P({Q(1), Q(-1)}), P({Q(-1), Q(1, 2)})};
    cert = in_hull(P({Q(0), Q(0)}), gens);
    REQUIRE_FALSE(cert.inside());
    CHECK(verify_certificate(cert, P({Q(0), Q(0)}), gens));
}

TEST_CASE("in_hull input errors") {
    CHECK_THROWS_AS(in_hull(P({Q(0)}), {}), InputError);
    CHECK_THROWS_AS(in_hull(P({Q(0)}), {P({Q(1), Q(2)})}), InputError);
}

TEST_CASE("in_hull agrees with brute-force oracle on small sets") {
    std::mt19937_64 rng(20260810);
    int inside_seen = 0, outside_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t d = 1 + trial % 3;
        std::size_t k = 1 + (trial / 3) % 5;
        std::vector<Point> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_point(rng, d, 3, 4));
        Point q = random_point(rng, d, 3, 4);
        bool expect = hull_member_bruteforce(q, gens);
        auto cert = in_hull(q, gens);
        CHECK(cert.inside() == expect);
        CHECK(verify_certificate(cert, q, gens));
        (expect ? inside_seen : outside_seen)++;
        // Also probe a point that is certainly inside: a random vertex.
        auto cert2 = in_hull(gens[trial % k], gens);
        CHECK(cert2.inside());
        CHECK(verify_certificate(cert2, gens[trial % k], gens));
    }
    CHECK(inside_seen > 20);
    CHECK(outside_seen > 20);
}

TEST_CASE("satisfies reports the first violated constraint") {
    // carrier hyperplane <e1+e2, x> = 1 in dimension 2
    std::vector<Halfspace> cs;
    cs.push_back({P({Q(1), Q(1)}), Q(1), Relation::Eq});
    cs.push_back({P({Q(1), Q(0)}), Q(0), Relation::Ge});
    auto rep = satisfies(P({Q(0), Q(0)}), cs);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_violated == 0);
    rep = satisfies(P({Q(1, 2), Q(1, 2)}), cs);
    CHECK(rep.ok);
    CHECK_THROWS_AS(satisfies(P({Q(1)}), cs), InputError);
}

TEST_CASE("affine_rank basics and invariances") {
    CHECK(affine_rank({P({Q(3), Q(4)})}) == 0);
    CHECK(affine_rank({P({Q(0)}), P({Q(1)}), P({Q(1, 2)})}) == 1);
    // three collinear points in the plane
    CHECK(affine_rank({P({Q(0), Q(0)}), P({Q(1), Q(1)}), P({Q(2), Q(2)})}) == 1);
    CHECK(affine_rank({P({Q(0), Q(0)}), P({Q(1), Q(0)}), P({Q(0), Q(1)})}) == 2);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts;
        std::size_t n = 2 + trial % 5;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng, 4, 4, 4));
        std::size_t r = affine_rank(pts);
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(affine_rank(shuffled) == r);
        Point t = random_point(rng, 4, 9, 4);
        std::vector<Point> moved;
        for (const auto& p : pts) moved.push_back(p + t);
        CHECK(affine_rank(moved) == r);
    }
}

TEST_CASE("is_vertex") {
    std::vector<Point> tri = {P({Q(0), Q(0)}), P({Q(2), Q(0)}), P({Q(0), Q(2)})};
    for (std::size_t i = 0; i < 3; ++i) CHECK(is_vertex(i, tri));
    auto with_mid = tri;
    with_mid.push_back(P({Q(1), Q(0)})); // midpoint of an edge
    CHECK_FALSE(is_vertex(3, with_mid));
    auto with_centroid = tri;
    with_centroid.push_back(P({Q(2, 3), Q(2, 3)}));
    CHECK_FALSE(is_vertex(3, with_centroid));
    CHECK_THROWS_AS(is_vertex(9, tri), InputError);
}
