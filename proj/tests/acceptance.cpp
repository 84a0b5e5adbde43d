// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit
// if anything fails. Each criterion is independent and wraps its own
// exceptions, so one failure cannot hide another.
#include <critval/cli.hpp>
#include <critval/critval.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

using namespace critval;

namespace {

int failures = 0;

void report(int num, const std::string& desc, bool pass) {
    std::printf("%s  %2d. %s\n", pass ? "PASS" : "FAIL", num, desc.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void criterion(int num, const std::string& desc, bool (*body)()) {
    bool pass = false;
    std::string note;
    try {
        pass = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    report(num, desc + note, pass);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

MultiPoly worked_determinant() {
    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    return x.pow(2) * y.pow(3) * (x - y).pow(5) * Rational(-1, 10);
}

double inf_dist(const ComplexPoint& a, const ComplexPoint& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool c1_worked_example() {
    const auto start = std::chrono::steady_clock::now();
    const IdentityReport r = verify_identity(MultiIndex{2, 3});
    const double elapsed = seconds_since(start);
    return r.equal && r.lhs == worked_determinant() && elapsed < 1.0;
}

bool c2_sweep_identity() {
    const auto start = std::chrono::steady_clock::now();
    for (const MultiIndex& a : cli::enumerate_compositions(7, 3))
        if (!verify_identity(a).equal) return false;
    return seconds_since(start) <= 60.0;
}

bool c3_all_ones() {
    for (int n = 1; n <= 5; ++n) {
        const MultiIndex a(std::vector<int>(static_cast<std::size_t>(n), 1));
        const IdentityReport r = verify_identity(a, SizeGuard{5, 5});
        if (!r.equal) return false;
        MultiPoly expected = MultiPoly::one(n);
        for (int j = 1; j <= n; ++j) expected *= -MultiPoly::variable(n, j);
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (j == k) continue;
                expected *= MultiPoly::variable(n, k) - MultiPoly::variable(n, j);
            }
        expected *= Rational(Integer(1), factorial(n));
        if (r.rhs != expected) return false;
    }
    return true;
}

bool c4_vandermonde() {
    for (int n = 1; n <= 6; ++n)
        if (determinant(vandermonde_matrix(n)) != vandermonde_product(n)) return false;
    return true;
}

bool c5_constant_terms() {
    const auto start = std::chrono::steady_clock::now();
    for (const MultiIndex& a : cli::enumerate_compositions(8, 4))
        if (!run_dyson(a).equal) return false;
    for (const MultiIndex& a : cli::enumerate_compositions(7, 3))
        if (!detja_coefficient_check(a)) return false;
    return seconds_since(start) <= 120.0;
}

bool c6_emphasized_antiderivatives() {
    for (const MultiIndex& a : cli::enumerate_compositions(6, 3)) {
        const int m = a.m();
        for (int j = 1; j <= m; ++j) {
            const UniPoly r = emphasized_antiderivative(a, j);
            if (!r.substitute(j).is_zero()) return false;
            if (!divides(MultiPoly::variable(m, j, a.at(j) + 1), r.coeff(0))) return false;
            for (int i = 1; i <= m; ++i) {
                if (i == j) continue;
                const MultiPoly diff = MultiPoly::variable(m, i) - MultiPoly::variable(m, j);
                if (!divides(diff.pow(a.at(i) + a.at(j) + 1), r.substitute(i))) return false;
            }
            if (emphasized_antiderivative_explicit(a, j) != r) return false;
        }
    }
    return true;
}

bool c7_divisibility() {
    for (const MultiIndex& a : cli::enumerate_compositions(7, 3)) {
        const JacobianBundle bundle = build_bundle(a);
        if (!check_column_divisibility(bundle)) return false;
        if (!check_column_difference_divisibility(bundle)) return false;
    }
    return true;
}

bool c8_leading_terms() {
    for (const MultiIndex& a : cli::enumerate_compositions(7, 3)) {
        const auto rec = leading_term_recursion(a);
        if (rec != leading_term_formula(a)) return false;
        if (rec != determinant(build_bundle(a).jacobian).leading_term()) return false;
    }
    const std::vector<std::vector<int>> expected{
        {6, 6, 6, 18}, {6, 6, 6, 18}, {6, 6, 6, 18}, {5, 5, 5, 18}};
    if (zm_exponent_profile(MultiIndex{3, 7, 2, 6}) != expected) return false;
    for (const MultiIndex& a : cli::enumerate_compositions(6, 3)) {
        const JacobianBundle bundle = build_bundle(a);
        const auto profile = zm_exponent_profile(a);
        for (int i = 1; i <= a.m(); ++i)
            for (int j = 1; j <= a.m(); ++j)
                if (bundle.jacobian.at(i, j).max_exponent(a.m()) !=
                    profile[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)])
                    return false;
    }
    return true;
}

bool c9_two_factor_closed_forms() {
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b) {
            const UniPoly integrand = UniPoly::distinguished(1).pow(a) * UniPoly::linear_factor(1, 1).pow(b);
            const MultiPoly value = integrand.integrate().substitute(1);
            const TwoFactorValue closed = two_factor_value(a, b);
            if (value != closed.value_at_z0) return false;
            if (value.partial_derivative(1) != closed.derivative_at_z0) return false;
        }
    return true;
}

bool c10_numeric_agreement() {
    std::mt19937 rng(20260816);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_int_distribution<int> pick_m(1, 3);
    std::uniform_int_distribution<int> part(1, 3);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = pick_m(rng);
        std::vector<int> parts(static_cast<std::size_t>(m));
        for (int& p : parts) p = part(rng);
        const MultiIndex a(parts);

        // distinct, away-from-zero coordinates keep the Jacobian well scaled
        ComplexPoint z(static_cast<std::size_t>(m));
        for (;;) {
            for (auto& v : z) v = Complex(box(rng), box(rng));
            bool ok = true;
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (std::abs(z[i]) < 0.1) ok = false;
                for (std::size_t k = i + 1; k < z.size(); ++k)
                    if (std::abs(z[i] - z[k]) < 0.1) ok = false;
            }
            if (ok) break;
        }

        const ThetaEvaluator eval(a);
        const ComplexMatrix jac = eval.jacobian(z);
        double scale = 1.0, err_re = 0.0, err_im = 0.0;
        for (const auto& row : jac)
            for (const Complex& v : row) scale = std::max(scale, std::abs(v));
        for (int i = 0; i < m; ++i) {
            ComplexPoint zp = z, zm = z, zpi = z, zmi = z;
            zp[static_cast<std::size_t>(i)] += h;
            zm[static_cast<std::size_t>(i)] -= h;
            zpi[static_cast<std::size_t>(i)] += Complex(0, h);
            zmi[static_cast<std::size_t>(i)] -= Complex(0, h);
            const ComplexPoint tp = eval.theta(zp), tm = eval.theta(zm);
            const ComplexPoint tpi = eval.theta(zpi), tmi = eval.theta(zmi);
            for (int j = 0; j < m; ++j) {
                const std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
                err_re = std::max(err_re, std::abs((tp[sj] - tm[sj]) / (2 * h) - jac[si][sj]));
                err_im = std::max(err_im, std::abs((tpi[sj] - tmi[sj]) / Complex(0, 2 * h) - jac[si][sj]));
            }
        }
        if (err_re / scale > 1e-6 || err_im / scale > 1e-6) return false;

        const Complex det = complex_determinant(jac);
        const Complex expect = closed_form_determinant(a).eval(z);
        if (std::abs(det - expect) > 1e-10 * std::max(1.0, std::abs(expect))) return false;
    }
    return true;
}

bool c11_path_lifting() {
    // analytic check: theta(z) = -z^2/2, y(t) = -(1+t)^2/2, z(t) = 1+t
    {
        const SetPartition lambda = SetPartition::singletons(1);
        std::vector<ComplexPoint> target;
        const int segments = 8;
        for (int k = 0; k <= segments; ++k) {
            const double t = static_cast<double>(k) / segments;
            target.push_back({Complex(-(1 + t) * (1 + t) / 2, 0)});
        }
        const ComplexPath lifted = lift_path(lambda, {Complex(1, 0)}, ComplexPath(target));
        for (int k = 0; k <= segments; ++k) {
            const double t = static_cast<double>(k) / segments;
            if (std::abs(lifted.at(static_cast<std::size_t>(k))[0] - Complex(1 + t, 0)) > 1e-9) return false;
        }
    }

    // random small-perturbation paths in one to three variables
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_real_distribution<double> nudge(-0.02, 0.02);
    for (int n = 1; n <= 3; ++n) {
        const SetPartition lambda = SetPartition::singletons(n);
        for (int trial = 0; trial < 3; ++trial) {
            ComplexPoint z0(static_cast<std::size_t>(n));
            for (;;) {
                for (auto& v : z0) v = Complex(box(rng), box(rng));
                bool ok = true;
                for (std::size_t i = 0; i < z0.size(); ++i) {
                    if (std::abs(z0[i]) < 0.3) ok = false;
                    for (std::size_t k = i + 1; k < z0.size(); ++k)
                        if (std::abs(z0[i] - z0[k]) < 0.3) ok = false;
                }
                if (ok) break;
            }
            const ComplexPoint y0 = theta_lambda(lambda, z0);
            ComplexPoint delta(static_cast<std::size_t>(n));
            for (auto& d : delta) d = Complex(nudge(rng), nudge(rng));

            std::vector<ComplexPoint> target;
            const int segments = 8;
            for (int k = 0; k <= segments; ++k) {
                const double t = static_cast<double>(k) / segments;
                ComplexPoint y = y0;
                for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * delta[i];
                target.push_back(y);
            }
            const ComplexPath forward(target);
            const ComplexPath lifted = lift_path(lambda, z0, forward);
            for (std::size_t k = 0; k < lifted.size(); ++k)
                if (inf_dist(theta_lambda(lambda, lifted.at(k)), target[k]) > 1e-9) return false;

            const ComplexPath back = lift_path(lambda, lifted.at(lifted.size() - 1), forward.reversed());
            if (inf_dist(back.at(back.size() - 1), z0) > 1e-6) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "worked example a=(2,3): symbolic Jacobian determinant equals the closed product form, under 1s",
              &c1_worked_example);
    criterion(2, "determinant factorization identity over every multi-index with n <= 7, m <= 3, within 60s",
              &c2_sweep_identity);
    criterion(3, "all-ones multi-indices up to n = 5 reduce to the 1/n! product form", &c3_all_ones);
    criterion(4, "Vandermonde determinants equal the difference product exactly for n <= 6", &c4_vandermonde);
    criterion(5, "constant term equals the multinomial for n <= 8, m <= 4, and the top coefficient of the "
                 "determinant is (-1)^n for n <= 7, m <= 3, within 120s",
              &c5_constant_terms);
    criterion(6, "emphasized antiderivatives: root at z_j, divisibility at 0 and z_i, and the explicit double "
                 "sum agrees, for n <= 6, m <= 3",
              &c6_emphasized_antiderivatives);
    criterion(7, "column divisibility by z_j powers and column-difference divisibility by (z_k - z_j) powers "
                 "over n <= 7, m <= 3",
              &c7_divisibility);
    criterion(8, "leading terms by recursion, closed formula, and expansion agree over n <= 7, m <= 3; last-"
                 "variable exponent profiles match",
              &c8_leading_terms);
    criterion(9, "closed forms for the two-factor integral and its derivative match direct integration for "
                 "exponents up to 5",
              &c9_two_factor_closed_forms);
    criterion(10, "at 100 random well-separated points: finite differences confirm the Jacobian to 1e-6 and "
                  "the numeric determinant matches the closed form to 1e-10",
              &c10_numeric_agreement);
    criterion(11, "path lifting: analytic one-variable lift to 1e-9; random perturbation paths in up to three "
                  "variables lift with residual 1e-9 and invert to 1e-6",
              &c11_path_lifting);

    if (failures) {
        std::printf("%d of 11 criteria FAILED\n", failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
