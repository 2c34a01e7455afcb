#include "npp/hull.hpp"

#include "npp/errors.hpp"
#include "npp/simplex_lp.hpp"

namespace npp {

Certificate in_hull(const Point& query, const std::vector<Point>& generators) {
    if (generators.empty()) throw InputError("in_hull: empty generator list");
    const std::size_t d = query.dim();
    for (const auto& g : generators)
        if (g.dim() != d) throw InputError("in_hull: dimension mismatch");

    // Feasibility of  sum_i lambda_i g_i = q,  sum_i lambda_i = 1,  lambda >= 0.
    const std::size_t k = generators.size();
    std::vector<std::vector<Rational>> rows(d + 1, std::vector<Rational>(k));
    std::vector<Rational> rhs(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = generators[j][i];
        rhs[i] = query[i];
    }
    for (std::size_t j = 0; j < k; ++j) rows[d][j] = 1;
    rhs[d] = 1;

    Feasibility f = solve_equality_feasibility(rows, rhs);
    Certificate cert;
    if (f.feasible) {
        cert.kind = Certificate::Kind::Inside;
        for (std::size_t j = 0; j < k; ++j)
            if (f.solution[j] != 0) cert.combination.emplace_back(j, f.solution[j]);
        if (cert.combination.empty()) cert.combination.emplace_back(0, Rational(0));
        return cert;
    }

    // Farkas vector y: <y_c, g_j> + y_d <= 0 for all j, <y_c, q> + y_d > 0.
    // Fold y_d into the offset and place the cut halfway across the gap so
    // both sides are strict.
    cert.kind = Certificate::Kind::Outside;
    Point normal(std::vector<Rational>(f.farkas.begin(), f.farkas.begin() + d));
    Rational worst = dot(normal, generators[0]);
    for (std::size_t j = 1; j < k; ++j) {
        Rational v = dot(normal, generators[j]);
        if (v > worst) worst = v;
    }
    Rational qside = dot(normal, query);
    cert.separator.normal = normal;
    cert.separator.offset = (worst + qside) / 2;
    cert.separator.rel = Relation::Le; // generators' side
    return cert;
}

bool verify_certificate(const Certificate& cert, const Point& query,
                        const std::vector<Point>& generators) {
    if (cert.kind == Certificate::Kind::Inside) {
        Rational total = 0;
        Point recomb = zero_point(query.dim());
        for (const auto& [idx, coef] : cert.combination) {
            if (idx >= generators.size()) return false;
            if (coef < 0) return false;
            total += coef;
            recomb = recomb + coef * generators[idx];
        }
        return total == 1 && recomb == query;
    }
    const Halfspace& h = cert.separator;
    bool nonzero = false;
    for (const auto& c : h.normal.coords) nonzero = nonzero || c != 0;
    if (!nonzero) return false;
    for (const auto& g : generators)
        if (dot(h.normal, g) >= h.offset) return false;
    return dot(h.normal, query) > h.offset;
}

SatisfyReport satisfies(const Point& p, const std::vector<Halfspace>& constraints) {
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].normal.dim() != p.dim())
            throw InputError("satisfies: dimension mismatch");
        if (!constraints[i].holds(p)) return {false, i};
    }
    return {true, 0};
}

std::size_t affine_rank(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("affine_rank: empty point list");
    if (points.size() == 1) return 0;
    const std::size_t d = points[0].dim();

    // Incremental elimination of the difference vectors against the first
    // point. Basis rows are kept sparse; structured inputs stay cheap.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> basis;
    std::vector<std::size_t> pivots;
    std::vector<Rational> work(d);
    for (std::size_t pi = 1; pi < points.size(); ++pi) {
        if (points[pi].dim() != d) throw InputError("affine_rank: dimension mismatch");
        if (basis.size() == d) break; // full rank already
        for (std::size_t j = 0; j < d; ++j) work[j] = points[pi][j] - points[0][j];
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const Rational& lead = work[pivots[r]];
            if (lead == 0) continue;
            Rational f = lead / basis[r].front().second;
            for (const auto& [idx, val] : basis[r]) work[idx] -= f * val;
        }
        std::size_t piv = d;
        for (std::size_t j = 0; j < d; ++j)
            if (work[j] != 0) { piv = j; break; }
        if (piv < d) {
            std::vector<std::pair<std::size_t, Rational>> row;
            row.emplace_back(piv, work[piv]);
            for (std::size_t j = piv + 1; j < d; ++j)
                if (work[j] != 0) row.emplace_back(j, work[j]);
            basis.push_back(std::move(row));
            pivots.push_back(piv);
        }
    }
    return basis.size();
}

bool is_vertex(std::size_t candidate, const std::vector<Point>& points) {
    if (candidate >= points.size()) throw InputError("is_vertex: bad candidate index");
    if (points.size() == 1) return true;
    std::vector<Point> others;
    others.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i)
        if (i != candidate) others.push_back(points[i]);
    return !in_hull(points[candidate], others).inside();
}

} // namespace npp
