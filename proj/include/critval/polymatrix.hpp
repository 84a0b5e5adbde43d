#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "multipoly.hpp"

namespace critval {

// Dense matrix of MultiPoly entries sharing one arity. Indices are 1-based.
class PolyMatrix {
public:
    PolyMatrix(int rows, int cols, int arity)
        : rows_(rows), cols_(cols), arity_(arity),
          entries_(checked_size(rows, cols, arity), MultiPoly(arity)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int arity() const { return arity_; }

    const MultiPoly& at(int i, int j) const { return entries_[index(i, j)]; }
    MultiPoly& at(int i, int j) { return entries_[index(i, j)]; }

    bool is_square() const { return rows_ == cols_; }

    // entry-wise leading terms; requires every entry nonzero
    PolyMatrix leading_term_matrix() const {
        PolyMatrix r(rows_, cols_, arity_);
        for (int i = 1; i <= rows_; ++i)
            for (int j = 1; j <= cols_; ++j) {
                auto [m, c] = at(i, j).leading_term();
                r.at(i, j) = MultiPoly::term(m, c);
            }
        return r;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.arity_ == b.arity_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

private:
    static std::size_t checked_size(int rows, int cols, int arity) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("PolyMatrix: dimensions must be >= 1");
        if (arity < 1) throw std::invalid_argument("PolyMatrix: arity must be >= 1");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    std::size_t index(int i, int j) const {
        if (i < 1 || i > rows_ || j < 1 || j > cols_) throw std::invalid_argument("PolyMatrix: index out of range");
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j - 1);
    }

    int rows_, cols_, arity_;
    std::vector<MultiPoly> entries_;
};

enum class DetMethod { Auto, Leibniz, FractionFree };

namespace detail {

inline int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Sum over all n! permutations. Guarded to n <= 8.
inline MultiPoly determinant_leibniz(const PolyMatrix& m) {
    const int n = m.rows();
    if (n > 8) throw std::invalid_argument("determinant: Leibniz expansion is limited to size <= 8");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    MultiPoly det(m.arity());
    do {
        MultiPoly prod = MultiPoly::constant(m.arity(), Rational(permutation_sign(perm)));
        for (int i = 1; i <= n; ++i) {
            prod *= m.at(i, perm[static_cast<std::size_t>(i - 1)]);
            if (prod.is_zero()) break;
        }
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Bareiss-style fraction-free elimination: every division is exact in
// the polynomial ring (Sylvester's identity), so no fractions of
// polynomials ever appear.
inline MultiPoly determinant_fraction_free(const PolyMatrix& input) {
    const int n = input.rows();
    PolyMatrix m = input;
    int sign = 1;
    MultiPoly prev = MultiPoly::one(m.arity());
    for (int k = 1; k < n; ++k) {
        if (m.at(k, k).is_zero()) {
            int pivot = 0;
            for (int r = k + 1; r <= n; ++r)
                if (!m.at(r, k).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot == 0) return MultiPoly(m.arity());
            for (int j = 1; j <= n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            sign = -sign;
        }
        for (int i = k + 1; i <= n; ++i)
            for (int j = k + 1; j <= n; ++j) {
                MultiPoly num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                auto q = divide_exact(num, prev);
                if (!q) throw std::logic_error("determinant: fraction-free step failed to divide");
                m.at(i, j) = std::move(*q);
            }
        prev = m.at(k, k);
    }
    MultiPoly det = m.at(n, n);
    if (sign < 0) det = -det;
    return det;
}

}  // namespace detail

inline MultiPoly determinant(const PolyMatrix& m, DetMethod method = DetMethod::Auto) {
    if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
    switch (method) {
        case DetMethod::Leibniz:
            return detail::determinant_leibniz(m);
        case DetMethod::FractionFree:
            return detail::determinant_fraction_free(m);
        case DetMethod::Auto:
        default:
            return m.rows() <= 8 ? detail::determinant_leibniz(m) : detail::determinant_fraction_free(m);
    }
}

// n x n matrix with (i,j) entry z_j^{i-1}
inline PolyMatrix vandermonde_matrix(int n) {
    if (n < 1) throw std::invalid_argument("vandermonde_matrix: n must be >= 1");
    PolyMatrix v(n, n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            v.at(i, j) = i == 1 ? MultiPoly::one(n) : MultiPoly::variable(n, j, i - 1);
    return v;
}

// the product form of the Vandermonde determinant, prod_{j<k} (z_k - z_j)
inline MultiPoly vandermonde_product(int n) {
    if (n < 1) throw std::invalid_argument("vandermonde_product: n must be >= 1");
    MultiPoly prod = MultiPoly::one(n);
    for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
            prod *= MultiPoly::variable(n, k) - MultiPoly::variable(n, j);
    return prod;
}

}  // namespace critval
