#include <catch2/catch_amalgamated.hpp>

#include <critval/critval.hpp>

#include <random>

using namespace critval;

namespace {

MultiPoly P(const std::string& text, int arity) { return parse_poly(text, arity); }

MultiPoly random_poly(std::mt19937& rng, int arity, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    MultiPoly p(arity);
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<int> exps(static_cast<std::size_t>(arity));
        for (int& e : exps) e = exp(rng);
        p.add_term(Monomial(std::move(exps)), Rational(num(rng), den(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("rational values are always canonical") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(2, 4).numerator() == 1);
    REQUIRE(Rational(2, 4).denominator() == 2);
    REQUIRE(Rational(1, -2).numerator() == -1);
    REQUIRE(Rational(1, -2).denominator() == 2);
    REQUIRE(Rational(0, 7).denominator() == 1);
    REQUIRE(Rational().is_zero());
    REQUIRE(Rational(6, 2).is_integer());
    REQUIRE_FALSE(Rational(1, 3).is_integer());
    REQUIRE(Rational(-3, 7).sign() == -1);
    REQUIRE(Rational(5).str() == "5");
    REQUIRE(Rational(-10, 4).str() == "-5/2");
}

TEST_CASE("rational arithmetic is exact") {
    REQUIRE(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    REQUIRE(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    REQUIRE(Rational(1, 2) / Rational(1, 3) == Rational(3, 2));
    REQUIRE(Rational(1, 2) - Rational(1, 2) == Rational());
    REQUIRE(-Rational(3, 4) == Rational(-3, 4));
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE_THROWS_AS(Rational(Integer(1), Integer(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("factorials are exact integers") {
    REQUIRE(factorial(0) == 1);
    REQUIRE(factorial(5) == 120);
    REQUIRE(factorial(20) == Integer("2432902008176640000"));
    REQUIRE_THROWS_AS(factorial(-1), std::invalid_argument);
}

TEST_CASE("monomial order compares the highest-index variable first") {
    // z1^9 z2^6 z3^3 < z1 z2^2 z3^4 because the z3 exponents differ first
    const Monomial big_low(std::vector<int>{9, 6, 3});
    const Monomial small_high(std::vector<int>{1, 2, 4});
    REQUIRE(big_low < small_high);

    MultiPoly f(3);
    f.add_term(big_low, Rational(7));
    f.add_term(small_high, Rational(-6));
    const auto [mono, coef] = f.leading_term();
    REQUIRE(mono == small_high);
    REQUIRE(coef == Rational(-6));
}

TEST_CASE("monomial order is a total order") {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<int> exp(0, 3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Monomial> triple;
        for (int i = 0; i < 3; ++i) {
            std::vector<int> exps(3);
            for (int& e : exps) e = exp(rng);
            triple.emplace_back(std::move(exps));
        }
        for (const Monomial& a : triple)
            for (const Monomial& b : triple) {
                const int lt = (a < b) ? 1 : 0;
                const int eq = (a == b) ? 1 : 0;
                const int gt = (a > b) ? 1 : 0;
                REQUIRE(lt + eq + gt == 1);
            }
        std::sort(triple.begin(), triple.end());
        REQUIRE(triple[0] <= triple[1]);
        REQUIRE(triple[1] <= triple[2]);
        REQUIRE(triple[0] <= triple[2]);
    }
}

TEST_CASE("monomial arithmetic") {
    const Monomial a(std::vector<int>{1, 2});
    const Monomial b(std::vector<int>{3, 0});
    REQUIRE((a * b).exponents() == std::vector<int>{4, 2});
    REQUIRE(a.divides(a * b));
    REQUIRE_FALSE((a * b).divides(a));
    REQUIRE(((a * b) / a) == b);
    REQUIRE_THROWS_AS(a / b, std::domain_error);
    REQUIRE_THROWS_AS(Monomial(std::vector<int>{1, -1}), std::invalid_argument);
    REQUIRE_THROWS_AS(Monomial::compare(a, Monomial::unit(3)), std::invalid_argument);
    REQUIRE(a.total_degree() == 3);
    REQUIRE(Monomial::variable(2, 2, 5).exponent(2) == 5);
}

TEST_CASE("multipoly ring arithmetic") {
    const MultiPoly z1 = MultiPoly::variable(2, 1);
    const MultiPoly z2 = MultiPoly::variable(2, 2);
    REQUIRE((z1 + z2) * (z1 - z2) == P("z1^2 - z2^2", 2));
    const MultiPoly p = P("1/2 * z1 * z2 + 3", 2);
    REQUIRE(p + MultiPoly(2) == p);
    REQUIRE((z2 - z1) * (z2 - z1) == P("z2^2 - 2*z1*z2 + z1^2", 2));
    REQUIRE((p - p).is_zero());
    REQUIRE_THROWS_AS(p + MultiPoly::one(3), std::invalid_argument);
}

TEST_CASE("multipoly stores no zero coefficients") {
    MultiPoly p(2);
    p.add_term(Monomial::variable(2, 1), Rational(1));
    p.add_term(Monomial::variable(2, 1), Rational(-1));
    REQUIRE(p.is_zero());
    REQUIRE(p.term_count() == 0);
    p.add_term(Monomial::unit(2), Rational(0));
    REQUIRE(p.term_count() == 0);
}

TEST_CASE("multipoly pow") {
    const MultiPoly z1 = MultiPoly::variable(3, 1);
    const MultiPoly z3 = MultiPoly::variable(3, 3);
    REQUIRE((MultiPoly::variable(2, 1) - MultiPoly::variable(2, 2)).pow(0) == MultiPoly::one(2));
    REQUIRE((z3 - z1).pow(2) == P("z3^2 - 2*z1*z3 + z1^2", 3));
    const auto [mono, coef] = (MultiPoly::variable(2, 1) - MultiPoly::variable(2, 2)).pow(5).leading_term();
    REQUIRE(mono == Monomial::variable(2, 2, 5));
    REQUIRE(coef == Rational(-1));
    REQUIRE_THROWS_AS(z1.pow(-1), std::invalid_argument);
}

TEST_CASE("partial derivatives") {
    REQUIRE(P("z1^2 * z2", 2).partial_derivative(1) == P("2 * z1 * z2", 2));
    REQUIRE(P("z1^3", 2).partial_derivative(2).is_zero());
    // first component of theta for a=(2,3), differentiated in x, gives
    // the (1,1) Jacobian entry
    const MultiPoly theta1 = P("1/60*z1^6 + -1/10*z1^5*z2 + 1/4*z1^4*z2^2 + -1/3*z1^3*z2^3", 2);
    const MultiPoly entry11 = P("1/10*z1^5 + -1/2*z1^4*z2 + z1^3*z2^2 + -1*z1^2*z2^3", 2);
    REQUIRE(theta1.partial_derivative(1) == entry11);
    REQUIRE_THROWS_AS(theta1.partial_derivative(3), std::invalid_argument);
}

TEST_CASE("leading terms") {
    const auto [m5, c5] = MultiPoly::constant(2, Rational(5)).leading_term();
    REQUIRE(m5 == Monomial::unit(2));
    REQUIRE(c5 == Rational(5));

    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    const MultiPoly p = x.pow(2) * y.pow(3) * (x - y).pow(5);
    const auto [mono, coef] = p.leading_term();
    REQUIRE(mono == Monomial(std::vector<int>{2, 8}));
    REQUIRE(coef == Rational(-1));

    REQUIRE_THROWS_AS(MultiPoly(2).leading_term(), std::domain_error);
}

TEST_CASE("leading term of a product is the product of the leading terms") {
    std::mt19937 rng(7113);
    for (int trial = 0; trial < 200; ++trial) {
        const MultiPoly p = random_poly(rng, 3, 5, 4);
        const MultiPoly q = random_poly(rng, 3, 5, 4);
        if (p.is_zero() || q.is_zero()) continue;
        const auto [pm, pc] = p.leading_term();
        const auto [qm, qc] = q.leading_term();
        const auto [rm, rc] = (p * q).leading_term();
        REQUIRE(rm == pm * qm);
        REQUIRE(rc == pc * qc);
    }
}

TEST_CASE("coefficient extraction") {
    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    const MultiPoly det = x.pow(2) * y.pow(3) * (x - y).pow(5) * Rational(-1, 10);
    REQUIRE(det.coefficient_of(Monomial(std::vector<int>{2, 8})) == Rational(1, 10));
    REQUIRE(det.coefficient_of(Monomial(std::vector<int>{5, 5})) == Rational(-1));
    REQUIRE(MultiPoly(2).coefficient_of(Monomial::variable(2, 1)) == Rational(0));
}

TEST_CASE("exact division") {
    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    const MultiPoly det = x.pow(2) * y.pow(3) * (x - y).pow(5) * Rational(-1, 10);

    const auto q = divide_exact(det, (x - y).pow(5));
    REQUIRE(q.has_value());
    REQUIRE(*q == x.pow(2) * y.pow(3) * Rational(-1, 10));

    REQUIRE_FALSE(divides(x, x + MultiPoly::one(2)));
    const auto q2 = divide_exact(x.pow(3) * y, x.pow(2));
    REQUIRE(q2.has_value());
    REQUIRE(*q2 == x * y);

    REQUIRE_THROWS_AS(divide_exact(x, MultiPoly(2)), std::invalid_argument);
}

TEST_CASE("exact division is a right inverse of multiplication") {
    std::mt19937 rng(40917);
    int nontrivial = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const MultiPoly d = random_poly(rng, 3, 4, 3);
        const MultiPoly q = random_poly(rng, 3, 4, 3);
        if (d.is_zero()) continue;
        const MultiPoly p = d * q;
        const auto recovered = divide_exact(p, d);
        REQUIRE(recovered.has_value());
        REQUIRE(*recovered == q);
        ++nontrivial;
    }
    REQUIRE(nontrivial > 50);
}

TEST_CASE("determinants of small matrices") {
    PolyMatrix m(2, 2, 2);
    m.at(1, 1) = MultiPoly::one(2);
    m.at(1, 2) = MultiPoly::one(2);
    m.at(2, 1) = MultiPoly::variable(2, 1);
    m.at(2, 2) = MultiPoly::variable(2, 2);
    REQUIRE(determinant(m) == P("z2 - z1", 2));

    REQUIRE(determinant(vandermonde_matrix(3)) == P("z2-z1", 3) * P("z3-z1", 3) * P("z3-z2", 3));

    PolyMatrix rect(2, 3, 2);
    REQUIRE_THROWS_AS(determinant(rect), std::invalid_argument);

    PolyMatrix big(9, 9, 2);
    REQUIRE_THROWS_AS(determinant(big, DetMethod::Leibniz), std::invalid_argument);
}

TEST_CASE("the worked 2x2 Jacobian determinant") {
    // the displayed Jacobian for a=(2,3), entry by entry
    PolyMatrix j(2, 2, 2);
    j.at(1, 1) = P("1/10*z1^5 + -1/2*z1^4*z2 + z1^3*z2^2 + -1*z1^2*z2^3", 2);
    j.at(1, 2) = P("-1/2*z1*z2^4 + 1/10*z2^5", 2);
    j.at(2, 1) = P("-1/10*z1^5 + 1/2*z1^4*z2 + -1*z1^3*z2^2", 2);
    j.at(2, 2) = P("-1*z1^2*z2^3 + 1/2*z1*z2^4 + -1/10*z2^5", 2);

    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    const MultiPoly expected = x.pow(2) * y.pow(3) * (x - y).pow(5) * Rational(-1, 10);
    REQUIRE(determinant(j, DetMethod::Leibniz) == expected);
    REQUIRE(determinant(j, DetMethod::FractionFree) == expected);
}

TEST_CASE("both determinant methods agree on random matrices") {
    std::mt19937 rng(90125);
    std::uniform_int_distribution<int> size(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = size(rng);
        PolyMatrix m(n, n, 2);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) m.at(i, j) = random_poly(rng, 2, 3, 3);
        REQUIRE(determinant(m, DetMethod::Leibniz) == determinant(m, DetMethod::FractionFree));
    }
}

TEST_CASE("fraction-free elimination handles zero pivots and singular matrices") {
    PolyMatrix m(3, 3, 2);
    // first pivot zero, but the matrix is invertible
    m.at(1, 1) = MultiPoly(2);
    m.at(1, 2) = MultiPoly::one(2);
    m.at(1, 3) = MultiPoly::variable(2, 1);
    m.at(2, 1) = MultiPoly::one(2);
    m.at(2, 2) = MultiPoly(2);
    m.at(2, 3) = MultiPoly::variable(2, 2);
    m.at(3, 1) = MultiPoly::variable(2, 2);
    m.at(3, 2) = MultiPoly::variable(2, 1);
    m.at(3, 3) = MultiPoly::one(2);
    REQUIRE(determinant(m, DetMethod::FractionFree) == determinant(m, DetMethod::Leibniz));

    PolyMatrix s(2, 2, 2);
    s.at(1, 1) = MultiPoly::variable(2, 1);
    s.at(1, 2) = MultiPoly::variable(2, 2);
    s.at(2, 1) = MultiPoly::variable(2, 1);
    s.at(2, 2) = MultiPoly::variable(2, 2);
    REQUIRE(determinant(s, DetMethod::FractionFree).is_zero());
}

TEST_CASE("leading term of a determinant from entrywise leading terms") {
    std::mt19937 rng(55501);
    std::uniform_int_distribution<int> size(1, 3);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = size(rng);
        PolyMatrix m(n, n, 2);
        bool entries_nonzero = true;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                m.at(i, j) = random_poly(rng, 2, 3, 3);
                entries_nonzero = entries_nonzero && !m.at(i, j).is_zero();
            }
        if (!entries_nonzero) continue;
        const MultiPoly lt_det = determinant(m.leading_term_matrix());
        if (lt_det.is_zero()) continue;  // cancellation: the reduction is inconclusive
        const MultiPoly det = determinant(m);
        REQUIRE_FALSE(det.is_zero());
        REQUIRE(det.leading_term() == lt_det.leading_term());
        ++checked;
    }
    REQUIRE(checked > 20);
}

TEST_CASE("vandermonde matrices") {
    const PolyMatrix v1 = vandermonde_matrix(1);
    REQUIRE(v1.at(1, 1) == MultiPoly::one(1));

    const PolyMatrix v2 = vandermonde_matrix(2);
    REQUIRE(v2.at(1, 1) == MultiPoly::one(2));
    REQUIRE(v2.at(1, 2) == MultiPoly::one(2));
    REQUIRE(v2.at(2, 1) == MultiPoly::variable(2, 1));
    REQUIRE(v2.at(2, 2) == MultiPoly::variable(2, 2));

    REQUIRE(vandermonde_matrix(3).at(3, 2) == MultiPoly::variable(3, 2, 2));

    for (int n = 1; n <= 6; ++n) REQUIRE(determinant(vandermonde_matrix(n)) == vandermonde_product(n));
}

TEST_CASE("unipoly integration") {
    // w -> z^2/2
    REQUIRE(UniPoly::distinguished(1).integrate() == UniPoly::distinguished(1).pow(2) * Rational(1, 2));

    // c * w^a -> c z^{a+1}/(a+1)
    const UniPoly cw4 = UniPoly::constant(P("z1 + z2", 2)) * UniPoly::distinguished(2).pow(4);
    REQUIRE(cw4.integrate() == UniPoly::constant(P("z1 + z2", 2)) * UniPoly::distinguished(2).pow(5) * Rational(1, 5));

    // the worked integrand (w-x)^2 (w-y)^3, integrated
    const UniPoly p = (UniPoly::linear_factor(2, 1).pow(2) * UniPoly::linear_factor(2, 2).pow(3)).integrate();
    REQUIRE(p.degree() == 6);
    REQUIRE(p.coeff(6) == MultiPoly::constant(2, Rational(1, 6)));
    REQUIRE(p.coeff(5) == P("-2/5*z1 + -3/5*z2", 2));
    REQUIRE(p.coeff(4) == P("1/4*z1^2 + 3/2*z1*z2 + 3/4*z2^2", 2));
    REQUIRE(p.coeff(3) == P("-1*z1^2*z2 + -2*z1*z2^2 + -1/3*z2^3", 2));
    REQUIRE(p.coeff(2) == P("3/2*z1^2*z2^2 + z1*z2^3", 2));
    REQUIRE(p.coeff(1) == P("-1*z1^2*z2^3", 2));
    REQUIRE(p.coeff(0).is_zero());
}

TEST_CASE("unipoly substitution collapses into the coefficient ring") {
    REQUIRE(UniPoly::distinguished(2).pow(2).substitute(1) == P("z1^2", 2));

    const UniPoly p = (UniPoly::linear_factor(2, 1).pow(2) * UniPoly::linear_factor(2, 2).pow(3)).integrate();
    REQUIRE(p.substitute(1) == P("1/60*z1^6 + -1/10*z1^5*z2 + 1/4*z1^4*z2^2 + -1/3*z1^3*z2^3", 2));
    REQUIRE(p.substitute(2) == P("-1/4*z1^2*z2^4 + 1/10*z1*z2^5 + -1/60*z2^6", 2));
    REQUIRE_THROWS_AS(p.substitute(3), std::invalid_argument);
}

TEST_CASE("unipoly derivative and integral are inverse") {
    std::mt19937 rng(61803);
    for (int trial = 0; trial < 30; ++trial) {
        UniPoly p(2);
        std::uniform_int_distribution<int> deg(0, 4);
        const int d = deg(rng);
        for (int k = 0; k <= d; ++k)
            p += UniPoly::constant(random_poly(rng, 2, 2, 2)) * UniPoly::distinguished(2).pow(k);
        REQUIRE(p.integrate().derivative() == p);
        REQUIRE(p.integrate().coeff(0).is_zero());
    }
}

TEST_CASE("unipoly numeric evaluation matches symbolic substitution") {
    const UniPoly p = (UniPoly::linear_factor(2, 1).pow(2) * UniPoly::linear_factor(2, 2).pow(3)).integrate();
    const std::vector<Complex> z{{0.7, -0.3}, {1.2, 0.4}};
    const Complex via_subst = p.substitute(1).eval(z);
    const Complex direct = p.eval(z[0], z);
    REQUIRE(std::abs(via_subst - direct) < 1e-12);
}

TEST_CASE("canonical polynomial text form") {
    REQUIRE(print_poly(MultiPoly(2)) == "0");
    REQUIRE(print_poly(MultiPoly::one(1)) == "1/1 * z1^0");

    const MultiPoly p = P("z1^2 - 2*z1*z2 + z2^2", 2);
    REQUIRE(print_poly(p) == "1/1 * z1^0 * z2^2 + -2/1 * z1^1 * z2^1 + 1/1 * z1^2 * z2^0");
}

TEST_CASE("parse accepts relaxed forms") {
    REQUIRE(P("z1", 2) == MultiPoly::variable(2, 1));
    REQUIRE(P("3 * z2^2", 2) == MultiPoly::variable(2, 2, 2) * Rational(3));
    REQUIRE(P("2/4*z1", 2) == MultiPoly::variable(2, 1) * Rational(1, 2));
    REQUIRE(P("-z1 + z1", 2).is_zero());
    REQUIRE(P("1 - 2*z1", 2) == MultiPoly::one(2) - MultiPoly::variable(2, 1) * Rational(2));
    REQUIRE(P("z1 + z1", 2) == MultiPoly::variable(2, 1) * Rational(2));
    REQUIRE(P("z1 * z1^2", 2) == MultiPoly::variable(2, 1, 3));
    REQUIRE(P("0", 3).is_zero());

    REQUIRE_THROWS_AS(P("", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(P("z5", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(P("1/", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(P("* z1", 2), std::invalid_argument);
}

TEST_CASE("print and parse round-trip bit for bit") {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 100; ++trial) {
        const MultiPoly p = random_poly(rng, 3, 6, 5);
        REQUIRE(parse_poly(print_poly(p), 3) == p);
    }
    const MultiPoly x = MultiPoly::variable(2, 1);
    const MultiPoly y = MultiPoly::variable(2, 2);
    const MultiPoly det = x.pow(2) * y.pow(3) * (x - y).pow(5) * Rational(-1, 10);
    REQUIRE(parse_poly(print_poly(det), 2) == det);
}
