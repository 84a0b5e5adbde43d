#pragma once

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "multi_index.hpp"
#include "numeric.hpp"
#include "polymatrix.hpp"
#include "unipoly.hpp"

namespace critval {

class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Bound on symbolic instance size. Term counts grow combinatorially in
// n and m; the defaults finish in seconds.
struct SizeGuard {
    int n_max = 7;
    int m_max = 3;

    void check(const MultiIndex& a) const {
        if (a.n() > n_max || a.m() > m_max)
            throw GuardExceeded("size guard exceeded for a=" + a.str() + ": n=" + std::to_string(a.n()) +
                                " m=" + std::to_string(a.m()) + " (limits n<=" + std::to_string(n_max) +
                                ", m<=" + std::to_string(m_max) + ")");
    }
};

// prod_l (w - z_l)^{a_l}, optionally embedded in a larger ambient arity
inline UniPoly build_integrand(const MultiIndex& a, int arity = 0) {
    if (arity == 0) arity = a.m();
    if (arity < a.m()) throw std::invalid_argument("build_integrand: ambient arity too small");
    UniPoly q = UniPoly::constant(arity, Rational(1));
    for (int l = 1; l <= a.m(); ++l) q *= UniPoly::linear_factor(arity, l).pow(a.at(l));
    return q;
}

// p_a(z) = integral_0^z prod_l (w - z_l)^{a_l} dw
inline UniPoly build_p_a(const MultiIndex& a, int arity = 0) { return build_integrand(a, arity).integrate(); }

// p_a, the component polynomials of theta_a, and the full Jacobian,
// all expanded symbolically.
struct JacobianBundle {
    MultiIndex a;
    UniPoly p;                      // p_a as a polynomial in the distinguished variable
    std::vector<MultiPoly> theta;   // theta[j-1] = p_a(z_j)
    PolyMatrix jacobian;            // entry (i,j) = d/dz_i of theta[j-1]
};

inline JacobianBundle build_bundle(const MultiIndex& a) {
    const int m = a.m();
    UniPoly p = build_p_a(a);
    std::vector<MultiPoly> theta;
    theta.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) theta.push_back(p.substitute(j));
    PolyMatrix jac(m, m, m);
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i) jac.at(i, j) = theta[static_cast<std::size_t>(j - 1)].partial_derivative(i);
    return JacobianBundle{a, std::move(p), std::move(theta), std::move(jac)};
}

// D(z) = prod_j (-z_j)^{a_j} * prod_{j != k} (z_k - z_j)^{a_j}, the
// determinant's closed-form factor (the second product runs over
// ordered pairs, with the exponent taken from the first index).
inline MultiPoly closed_form_factor(const MultiIndex& a) {
    const int m = a.m();
    MultiPoly d = MultiPoly::one(m);
    for (int j = 1; j <= m; ++j) d *= (-MultiPoly::variable(m, j)).pow(a.at(j));
    for (int j = 1; j <= m; ++j)
        for (int k = 1; k <= m; ++k) {
            if (j == k) continue;
            d *= (MultiPoly::variable(m, k) - MultiPoly::variable(m, j)).pow(a.at(j));
        }
    return d;
}

// det J_a = D(z) / multinomial(n; a)
inline MultiPoly closed_form_determinant(const MultiIndex& a) {
    return closed_form_factor(a) * Rational(Integer(1), multinomial(a));
}

// the n-argument form guards against a stale cached sum
inline Integer multinomial(int n, const MultiIndex& a) {
    if (n != a.n()) throw std::invalid_argument("multinomial: n does not equal the sum of a");
    return multinomial(a);
}

struct IdentityReport {
    MultiIndex a;
    MultiPoly lhs;  // determinant of the symbolic Jacobian
    MultiPoly rhs;  // closed form D(z) / multinomial
    bool equal;
    double wall_time_ms;
};

inline IdentityReport verify_identity(const MultiIndex& a, const SizeGuard& guard = {}) {
    guard.check(a);
    const auto start = std::chrono::steady_clock::now();
    JacobianBundle bundle = build_bundle(a);
    MultiPoly lhs = determinant(bundle.jacobian);
    MultiPoly rhs = closed_form_determinant(a);
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    bool equal = lhs == rhs;
    return IdentityReport{a, std::move(lhs), std::move(rhs), equal, ms};
}

// Every entry of column j is divisible by z_j^{a_j}, and off-diagonal
// entries by z_j^{a_j+1}.
inline bool check_column_divisibility(const JacobianBundle& bundle) {
    const int m = bundle.a.m();
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i) {
            const int exponent = bundle.a.at(j) + (i == j ? 0 : 1);
            const MultiPoly d = MultiPoly::variable(m, j, exponent);
            if (!divides(d, bundle.jacobian.at(i, j))) return false;
        }
    return true;
}

// For j != k, every entry of column k minus column j is divisible by
// (z_k - z_j)^{a_k + a_j}, and by one power more on rows i outside {j, k}.
inline bool check_column_difference_divisibility(const JacobianBundle& bundle) {
    const int m = bundle.a.m();
    for (int j = 1; j <= m; ++j)
        for (int k = 1; k <= m; ++k) {
            if (j == k) continue;
            const MultiPoly diff_base = MultiPoly::variable(m, k) - MultiPoly::variable(m, j);
            for (int i = 1; i <= m; ++i) {
                const int exponent = bundle.a.at(k) + bundle.a.at(j) + (i == j || i == k ? 0 : 1);
                const MultiPoly d = diff_base.pow(exponent);
                const MultiPoly difference = bundle.jacobian.at(i, k) - bundle.jacobian.at(i, j);
                if (!divides(d, difference)) return false;
            }
        }
    return true;
}

// lt(det J_a) without expanding the determinant, by the recursion
//   lt(det J_a) = (-z_m)^{a_m (m-1)} * lt(det J_{a'}) * lt((J_a)_{mm})
// with a' the length-(m-1) prefix. Unrolled, the result is the product
// over k of (-z_k)^{a_k (k-1)} times the leading term of the (k,k)
// entry of the prefix Jacobian, each computed from a single entry.
inline std::pair<Monomial, Rational> leading_term_recursion(const MultiIndex& a) {
    const int m = a.m();
    Monomial mono = Monomial::unit(m);
    Rational coef(1);
    for (int k = 1; k <= m; ++k) {
        const MultiIndex prefix = a.prefix(k);
        const MultiPoly entry = build_p_a(prefix, m).substitute(k).partial_derivative(k);
        const auto [em, ec] = entry.leading_term();
        const int power = a.at(k) * (k - 1);
        mono = mono * Monomial::variable(m, k, power) * em;
        coef *= ec;
        if (power % 2) coef = -coef;
    }
    return {mono, coef};
}

// lt(det J_a) from the closed form: exponent of z_t is
// (a_1 + ... + a_t) + (t-1) a_t and the coefficient is
// (-1)^{a_1 + 2 a_2 + ... + m a_m} / multinomial(n; a).
inline std::pair<Monomial, Rational> leading_term_formula(const MultiIndex& a) {
    const int m = a.m();
    std::vector<int> exps(static_cast<std::size_t>(m));
    int prefix_sum = 0;
    long weighted = 0;
    for (int t = 1; t <= m; ++t) {
        prefix_sum += a.at(t);
        exps[static_cast<std::size_t>(t - 1)] = prefix_sum + (t - 1) * a.at(t);
        weighted += static_cast<long>(t) * a.at(t);
    }
    Rational coef(Integer(weighted % 2 ? -1 : 1), multinomial(a));
    return {Monomial(std::move(exps)), coef};
}

// Highest exponent of z_m in each Jacobian entry: a_m when i,j < m;
// a_m - 1 when j < i = m; n when j = m.
inline std::vector<std::vector<int>> zm_exponent_profile(const MultiIndex& a) {
    const int m = a.m();
    std::vector<std::vector<int>> profile(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            int e;
            if (j == m) e = a.n();
            else if (i == m) e = a.at(m) - 1;
            else e = a.at(m);
            profile[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = e;
        }
    return profile;
}

namespace detail {

// A polynomial flattened to double coefficients for repeated numeric
// evaluation; per-variable power tables are built per call.
struct CompiledPoly {
    struct Term {
        double coef;
        std::vector<int> exps;
    };
    int arity = 0;
    std::vector<int> max_exps;
    std::vector<Term> terms;

    static CompiledPoly from(const MultiPoly& p) {
        CompiledPoly c;
        c.arity = p.arity();
        c.max_exps.assign(static_cast<std::size_t>(p.arity()), 0);
        for (const auto& [m, q] : p.terms()) {
            c.terms.push_back({q.to_double(), m.exponents()});
            for (int i = 0; i < p.arity(); ++i)
                c.max_exps[static_cast<std::size_t>(i)] =
                    std::max(c.max_exps[static_cast<std::size_t>(i)], m.exponent(i + 1));
        }
        return c;
    }

    Complex eval(const std::vector<std::vector<Complex>>& powers) const {
        Complex sum = 0.0;
        for (const Term& t : terms) {
            Complex v = t.coef;
            for (std::size_t i = 0; i < t.exps.size(); ++i) v *= powers[i][static_cast<std::size_t>(t.exps[i])];
            sum += v;
        }
        return sum;
    }
};

}  // namespace detail

// Fixed-a evaluator for theta_a and its Jacobian. The exact bundle is
// expanded once; coefficients are converted to double once; evaluation
// reuses per-variable power tables.
class ThetaEvaluator {
public:
    explicit ThetaEvaluator(const MultiIndex& a) : a_(a) {
        JacobianBundle bundle = build_bundle(a);
        const int m = a.m();
        theta_.reserve(static_cast<std::size_t>(m));
        for (const MultiPoly& t : bundle.theta) theta_.push_back(detail::CompiledPoly::from(t));
        jac_.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) jac_.push_back(detail::CompiledPoly::from(bundle.jacobian.at(i, j)));
        max_exps_.assign(static_cast<std::size_t>(m), 0);
        for (const auto& c : theta_) merge_max(c);
        for (const auto& c : jac_) merge_max(c);
    }

    const MultiIndex& a() const { return a_; }
    int m() const { return a_.m(); }

    ComplexPoint theta(const ComplexPoint& z) const {
        auto powers = power_table(z);
        ComplexPoint y(theta_.size());
        for (std::size_t j = 0; j < theta_.size(); ++j) y[j] = theta_[j].eval(powers);
        return y;
    }

    ComplexMatrix jacobian(const ComplexPoint& z) const {
        auto powers = power_table(z);
        const std::size_t m = static_cast<std::size_t>(a_.m());
        ComplexMatrix jac(m, ComplexPoint(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) jac[i][j] = jac_[i * m + j].eval(powers);
        return jac;
    }

private:
    void merge_max(const detail::CompiledPoly& c) {
        for (std::size_t i = 0; i < max_exps_.size(); ++i)
            max_exps_[i] = std::max(max_exps_[i], c.max_exps[i]);
    }

    std::vector<std::vector<Complex>> power_table(const ComplexPoint& z) const {
        if (static_cast<int>(z.size()) != a_.m())
            throw std::invalid_argument("ThetaEvaluator: dimension mismatch");
        std::vector<std::vector<Complex>> powers(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            powers[i].resize(static_cast<std::size_t>(max_exps_[i]) + 1);
            powers[i][0] = 1.0;
            for (std::size_t e = 1; e < powers[i].size(); ++e) powers[i][e] = powers[i][e - 1] * z[i];
        }
        return powers;
    }

    MultiIndex a_;
    std::vector<detail::CompiledPoly> theta_;
    std::vector<detail::CompiledPoly> jac_;  // row-major (i,j)
    std::vector<int> max_exps_;
};

inline ComplexPoint eval_theta_numeric(const MultiIndex& a, const ComplexPoint& z) {
    return ThetaEvaluator(a).theta(z);
}

inline ComplexMatrix eval_jacobian_numeric(const MultiIndex& a, const ComplexPoint& z) {
    return ThetaEvaluator(a).jacobian(z);
}

}  // namespace critval
