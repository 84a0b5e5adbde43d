#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace critval {

using Complex = std::complex<double>;
using ComplexPoint = std::vector<Complex>;
using ComplexMatrix = std::vector<std::vector<Complex>>;  // row-major, square where required

inline bool is_finite(const ComplexPoint& z) {
    for (const Complex& c : z)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

namespace detail {

// In-place LU with partial pivoting. Returns false when a pivot is
// exactly zero (singular to working precision). perm_sign and the
// pivot product give the determinant.
struct LuDecomposition {
    ComplexMatrix lu;
    std::vector<int> perm;
    int perm_sign = 1;
    bool ok = false;
};

inline LuDecomposition lu_decompose(ComplexMatrix a) {
    const std::size_t n = a.size();
    LuDecomposition d;
    d.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.perm[i] = static_cast<int>(i);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(a[k][k]);
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r][k]) > best) {
                best = std::abs(a[r][k]);
                pivot = r;
            }
        if (best == 0.0) {
            d.lu = std::move(a);
            return d;
        }
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(d.perm[pivot], d.perm[k]);
            d.perm_sign = -d.perm_sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            a[r][k] /= a[k][k];
            for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= a[r][k] * a[k][c];
        }
    }
    d.lu = std::move(a);
    d.ok = true;
    return d;
}

inline ComplexPoint lu_solve(const LuDecomposition& d, const ComplexPoint& b) {
    const std::size_t n = b.size();
    ComplexPoint x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[static_cast<std::size_t>(d.perm[i])];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= d.lu[i][j] * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= d.lu[i][j] * x[j];
        x[i] /= d.lu[i][i];
    }
    return x;
}

}  // namespace detail

inline ComplexMatrix transposed(const ComplexMatrix& a) {
    if (a.empty()) return a;
    ComplexMatrix t(a.front().size(), ComplexPoint(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.front().size()) throw std::invalid_argument("transposed: ragged matrix");
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    }
    return t;
}

// Solve A x = b by partial-pivot LU; nullopt when A is singular.
inline std::optional<ComplexPoint> solve_linear(const ComplexMatrix& a, const ComplexPoint& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_linear: dimension mismatch");
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("solve_linear: matrix is not square");
    auto d = detail::lu_decompose(a);
    if (!d.ok) return std::nullopt;
    return detail::lu_solve(d, b);
}

inline Complex complex_determinant(const ComplexMatrix& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("complex_determinant: matrix is not square");
    auto d = detail::lu_decompose(a);
    if (!d.ok) return 0.0;
    Complex det = static_cast<double>(d.perm_sign);
    for (std::size_t i = 0; i < a.size(); ++i) det *= d.lu[i][i];
    return det;
}

inline double inf_norm(const ComplexMatrix& a) {
    double norm = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (const Complex& c : row) s += std::abs(c);
        norm = std::max(norm, s);
    }
    return norm;
}

// ||A||_inf * ||A^{-1}||_inf with the inverse computed column by column;
// +infinity when A is singular. Intended for the small systems here.
inline double condition_inf(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    auto d = detail::lu_decompose(a);
    if (!d.ok) return std::numeric_limits<double>::infinity();
    ComplexMatrix inv(n, ComplexPoint(n));
    ComplexPoint e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        ComplexPoint col = detail::lu_solve(d, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
    }
    return inf_norm(a) * inf_norm(inv);
}

}  // namespace critval
