#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "multi_index.hpp"
#include "unipoly.hpp"

namespace critval {

// A derivative sequence (f_0, f_1, ...): deg f_k = k and f_k' = f_{k-1},
// with f_k = 0 for k < 0. Two kinds are provided:
//
//  - shifted_power(arity, center): f_k(w) = (w - z_center)^k / k!, with
//    center 0 meaning the origin (f_k = w^k / k!).
//  - product_family(a, excluded): the sequence anchored at degree
//    n - a_j by g_{n-a_j}(w) = prod_{l != j} (w - z_l)^{a_l} / a_l!,
//    extended downward by differentiation and upward by integration
//    with zero constants.
class DerivativeSequence {
public:
    static DerivativeSequence shifted_power(int arity, int center) {
        if (arity < 1) throw std::invalid_argument("DerivativeSequence: arity must be >= 1");
        if (center < 0 || center > arity)
            throw std::invalid_argument("DerivativeSequence: center must be 0 (origin) or a variable index");
        DerivativeSequence s(arity);
        s.center_ = center;
        return s;
    }

    static DerivativeSequence product_family(const MultiIndex& a, int excluded) {
        if (excluded < 1 || excluded > a.m())
            throw std::invalid_argument("DerivativeSequence: excluded index out of range");
        DerivativeSequence s(a.m());
        s.anchor_degree_ = a.n() - a.at(excluded);
        UniPoly anchor = UniPoly::constant(a.m(), Rational(1));
        for (int l = 1; l <= a.m(); ++l) {
            if (l == excluded) continue;
            anchor *= UniPoly::linear_factor(a.m(), l).pow(a.at(l));
            anchor *= Rational(Integer(1), factorial(a.at(l)));
        }
        s.anchor_ = anchor;
        return s;
    }

    int arity() const { return arity_; }

    // f_k; the zero polynomial for k < 0
    UniPoly term(int k) const {
        if (k < 0) return UniPoly(arity_);
        if (anchor_degree_ < 0) {
            UniPoly base = center_ == 0 ? UniPoly::distinguished(arity_) : UniPoly::linear_factor(arity_, center_);
            return base.pow(k) * Rational(Integer(1), factorial(k));
        }
        UniPoly f = *anchor_;
        for (int d = anchor_degree_; d > k; --d) f = f.derivative();
        for (int d = anchor_degree_; d < k; ++d) f = f.integrate();
        return f;
    }

private:
    explicit DerivativeSequence(int arity) : arity_(arity) {}

    int arity_;
    int center_ = 0;          // shifted_power: 0 = origin, else variable index
    int anchor_degree_ = -1;  // product_family only
    std::optional<UniPoly> anchor_;
};

// r = sum_{i=0}^{b} (-1)^i f_{a+1+i} g_{b-i}, an antiderivative of f_a g_b.
// When f is a shifted-power sequence centered at z_c, (w - z_c)^{a+1}
// divides r.
inline UniPoly antiderivative_of_product(const DerivativeSequence& f, const DerivativeSequence& g, int a, int b) {
    if (f.arity() != g.arity()) throw std::invalid_argument("antiderivative_of_product: arity mismatch");
    if (a < 0 || b < 0) throw std::invalid_argument("antiderivative_of_product: degrees must be >= 0");
    UniPoly r(f.arity());
    for (int i = 0; i <= b; ++i) {
        UniPoly term = f.term(a + 1 + i) * g.term(b - i);
        if (i % 2) r -= term;
        else r += term;
    }
    return r;
}

// The antiderivative of prod_l (w - z_l)^{a_l} / a_l! that emphasizes
// index j: it vanishes to order a_j + 1 at z_j.
inline UniPoly emphasized_antiderivative(const MultiIndex& a, int j) {
    if (j < 1 || j > a.m()) throw std::invalid_argument("emphasized_antiderivative: index out of range");
    const DerivativeSequence f = DerivativeSequence::shifted_power(a.m(), j);
    const DerivativeSequence g = DerivativeSequence::product_family(a, j);
    return antiderivative_of_product(f, g, a.at(j), a.n() - a.at(j));
}

// The same polynomial from the explicit double sum
//   sum_i (-1)^i (w-z_j)^{a_j+i+1}/(a_j+i+1)!
//     * sum_{b_1+...+b_m=i, b_j=0} i!/(b_1!...b_m!)
//         * prod_{l != j} (w-z_l)^{a_l-b_l}/(a_l-b_l)!
// with the inner sum over compositions bounded by b_l <= a_l.
inline UniPoly emphasized_antiderivative_explicit(const MultiIndex& a, int j) {
    if (j < 1 || j > a.m()) throw std::invalid_argument("emphasized_antiderivative_explicit: index out of range");
    const int m = a.m();
    UniPoly r(m);
    std::vector<int> b(static_cast<std::size_t>(m), 0);
    for (;;) {
        int i = 0;
        for (int x : b) i += x;
        Rational coef(factorial(i), factorial(a.at(j) + i + 1));
        UniPoly term = UniPoly::linear_factor(m, j).pow(a.at(j) + i + 1);
        for (int l = 1; l <= m; ++l) {
            if (l == j) continue;
            const int bl = b[static_cast<std::size_t>(l - 1)];
            coef /= Rational(factorial(bl) * factorial(a.at(l) - bl));
            term *= UniPoly::linear_factor(m, l).pow(a.at(l) - bl);
        }
        if (i % 2) r -= term * coef;
        else r += term * coef;

        // odometer over 0 <= b_l <= a_l with b_j pinned to 0
        int pos = 1;
        while (pos <= m) {
            if (pos == j) {
                ++pos;
                continue;
            }
            int& bl = b[static_cast<std::size_t>(pos - 1)];
            if (bl < a.at(pos)) {
                ++bl;
                break;
            }
            bl = 0;
            ++pos;
        }
        if (pos > m) break;
    }
    return r;
}

// p~_a(z) = integral from 0 of the product prod_l (w - z_l)^{a_l} / a_l!
inline UniPoly tilde_p(const MultiIndex& a) {
    UniPoly integrand = UniPoly::constant(a.m(), Rational(1));
    for (int l = 1; l <= a.m(); ++l) {
        integrand *= UniPoly::linear_factor(a.m(), l).pow(a.at(l));
        integrand *= Rational(Integer(1), factorial(a.at(l)));
    }
    return integrand.integrate();
}

// Closed forms for p(z) = integral_0^z w^a (w - z_0)^b dw at z = z_0:
// the value and its z_0-derivative, as arity-1 polynomials in z_0.
struct TwoFactorValue {
    MultiPoly value_at_z0;       // (-1)^b a! b! / (n+1)! z_0^{n+1}
    MultiPoly derivative_at_z0;  // (-1)^b a! b! / n!     z_0^n
};

inline TwoFactorValue two_factor_value(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("two_factor_value: a and b must be >= 1");
    const int n = a + b;
    const Integer numer = factorial(a) * factorial(b);
    const Rational sign(b % 2 ? -1 : 1);
    TwoFactorValue r{MultiPoly(1), MultiPoly(1)};
    r.value_at_z0.add_term(Monomial::variable(1, 1, n + 1), sign * Rational(numer, factorial(n + 1)));
    r.derivative_at_z0.add_term(Monomial::variable(1, 1, n), sign * Rational(numer, factorial(n)));
    return r;
}

}  // namespace critval
