#include "npp/simplex_lp.hpp"

#include <cstddef>

#include "npp/errors.hpp"

namespace npp {

Feasibility solve_equality_feasibility(const std::vector<std::vector<Rational>>& rows,
                                       const std::vector<Rational>& b) {
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows[0].size() : 0;
    if (b.size() != m) throw InputError("rhs size does not match row count");

    // Tableau: m rows over n structural + m artificial columns, rhs last.
    std::vector<int> sign(m, 1);
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) throw InputError("ragged constraint matrix");
        sign[i] = (b[i] < 0) ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = sign[i] < 0 ? -rows[i][j] : rows[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = sign[i] < 0 ? -b[i] : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Minimize the artificial sum. obj holds reduced costs; last entry is
    // the negated objective value.
    std::vector<Rational> obj(n + m + 1, Rational(0));
    for (std::size_t j = 0; j <= n + m; ++j) {
        Rational colsum = 0;
        for (std::size_t i = 0; i < m; ++i) colsum += t[i][j];
        Rational cost = (j >= n && j < n + m) ? Rational(1) : Rational(0);
        obj[j] = cost - colsum;
    }

    while (true) {
        // Bland: entering column = smallest index with negative reduced cost.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (obj[j] < 0) { enter = j; break; }
        }
        if (enter == n + m) break;

        // Ratio test; ties broken by smallest basis label (Bland).
        std::size_t leave = m;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][n + m] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("phase-1 simplex unbounded"); // cannot happen

        Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            Rational f = t[i][enter];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= n + m; ++j)
                t[i][j] -= f * t[leave][j];
        }
        Rational fo = obj[enter];
        if (fo != 0) {
            for (std::size_t j = 0; j <= n + m; ++j)
                obj[j] -= fo * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rational objval = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objval += t[i][n + m];

    Feasibility res;
    if (objval == 0) {
        res.feasible = true;
        res.solution.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.solution[basis[i]] = t[i][n + m];
    } else {
        // Dual values off the artificial columns: y_i = 1 - rbar_{art i};
        // undo the row sign flips to certify the original system.
        res.feasible = false;
        res.farkas.assign(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            Rational yi = Rational(1) - obj[n + i];
            res.farkas[i] = sign[i] < 0 ? -yi : yi;
        }
    }
    return res;
}

} // namespace npp
