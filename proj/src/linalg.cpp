#include "oklab/linalg.hpp"

#include <stdexcept>

namespace oklab::linalg {

Echelon rref(RatMatrix m) {
    Echelon out;
    if (m.empty()) return out;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rat inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        out.pivots.push_back(c);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

RatMatrix nullspace(const RatMatrix& m, std::size_t cols) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RatMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix aug(n, RatVec(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("inverse: matrix not square");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    RatMatrix inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    return inv;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b, std::size_t cols) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
    RatMatrix aug(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    Echelon e = rref(aug);
    RatVec x(cols, Rat(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == cols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][cols];
    }
    return x;
}

RatMatrix transpose(const RatMatrix& m, std::size_t cols) {
    RatMatrix t(cols, RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

RatVec apply(const RatMatrix& m, const RatVec& x) {
    RatVec y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
    return y;
}

int affine_rank(const std::vector<RatVec>& points) {
    if (points.empty()) return -1;
    RatMatrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    return static_cast<int>(rank(diffs));
}

}  // namespace oklab::linalg
