#pragma once

#include <stdexcept>
#include <vector>

#include "critical_map.hpp"
#include "multi_index.hpp"
#include "multipoly.hpp"

namespace critval {

// The Laurent product prod_{j != k} (1 - z_j/z_k)^{a_j} with its
// denominators cleared: it equals numerator / prod_k z_k^{n - a_k},
// so its constant term is one coefficient of the numerator. Laurent
// polynomials are never represented directly.
struct DysonInstance {
    MultiIndex a;
    MultiPoly numerator;                      // prod_{j != k} (z_k - z_j)^{a_j}, expanded
    std::vector<int> denominator_exponents;   // k-th entry: n - a_k
};

// Default guard for the Dyson expansion; the numerator's term count
// grows quickly with n.
inline SizeGuard dyson_guard() { return SizeGuard{8, 4}; }

inline DysonInstance build_dyson(const MultiIndex& a, const SizeGuard& guard = dyson_guard()) {
    guard.check(a);
    const int m = a.m();
    MultiPoly numerator = MultiPoly::one(m);
    for (int j = 1; j <= m; ++j)
        for (int k = 1; k <= m; ++k) {
            if (j == k) continue;
            numerator *= (MultiPoly::variable(m, k) - MultiPoly::variable(m, j)).pow(a.at(j));
        }
    std::vector<int> denom(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) denom[static_cast<std::size_t>(k - 1)] = a.n() - a.at(k);
    return DysonInstance{a, std::move(numerator), std::move(denom)};
}

// Constant term of the Laurent product: the coefficient of the
// monomial with exponent n - a_k on z_k in the cleared numerator.
inline Integer dyson_constant_term(const MultiIndex& a, const SizeGuard& guard = dyson_guard()) {
    DysonInstance instance = build_dyson(a, guard);
    Monomial target(instance.denominator_exponents);
    Rational c = instance.numerator.coefficient_of(target);
    if (!c.is_integer()) throw std::logic_error("dyson_constant_term: non-integer coefficient");
    return c.numerator();
}

struct DysonReport {
    MultiIndex a;
    Integer constant_term;
    Integer multinomial;
    bool equal;
};

inline DysonReport run_dyson(const MultiIndex& a, const SizeGuard& guard = dyson_guard()) {
    Integer ct = dyson_constant_term(a, guard);
    Integer mult = multinomial(a);
    bool equal = ct == mult;
    return DysonReport{a, std::move(ct), std::move(mult), equal};
}

// The monomial prod_j z_j^n appears in det J_a with coefficient (-1)^n.
inline bool detja_coefficient_check(const MultiIndex& a, const SizeGuard& guard = {}) {
    guard.check(a);
    const int m = a.m();
    JacobianBundle bundle = build_bundle(a);
    MultiPoly det = determinant(bundle.jacobian);
    std::vector<int> exps(static_cast<std::size_t>(m), a.n());
    Rational c = det.coefficient_of(Monomial(std::move(exps)));
    return c == Rational(a.n() % 2 ? -1 : 1);
}

// Denominator-cleared form of the equivalence between Theorem B and
// the constant-term identity:
//   det J_a * prod_k z_k^{n - a_k}
//     = ((-1)^n / multinomial) * prod_j z_j^n * numerator
// as an exact polynomial identity.
inline bool cleared_denominator_check(const MultiIndex& a, const SizeGuard& guard = {}) {
    guard.check(a);
    const int m = a.m();
    DysonInstance instance = build_dyson(a, SizeGuard{guard.n_max, guard.m_max});
    JacobianBundle bundle = build_bundle(a);
    MultiPoly lhs = determinant(bundle.jacobian);
    for (int k = 1; k <= m; ++k) lhs *= MultiPoly::variable(m, k, a.n() - a.at(k));
    MultiPoly rhs = instance.numerator;
    for (int j = 1; j <= m; ++j) rhs *= MultiPoly::variable(m, j, a.n());
    rhs *= Rational(Integer(a.n() % 2 ? -1 : 1), multinomial(a));
    return lhs == rhs;
}

}  // namespace critval
