#include "npp/linalg.hpp"

#include "npp/errors.hpp"

namespace npp {

std::size_t matrix_rank(Matrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rational>> solve_exact(Matrix a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        std::swap(b[rank], b[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < cols) return std::nullopt; // column-rank deficient: not unique
    for (std::size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt; // inconsistent
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
    return x;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t m = a.size();
    const std::size_t k = m ? a[0].size() : 0;
    const std::size_t n = b.empty() ? 0 : b[0].size();
    if (b.size() != k) throw InputError("matmul shape mismatch");
    Matrix c(m, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

} // namespace npp
