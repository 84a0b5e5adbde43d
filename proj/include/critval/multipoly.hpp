#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace critval {

// Multivariate polynomial over Rational in the variables z1..zm.
//
// Terms are stored in decreasing monomial order (see Monomial for the
// order), so the leading term is the first map entry. Zero coefficients
// are never stored; the zero polynomial has an empty term map.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialDescending>;

    explicit MultiPoly(int arity) : arity_(check_arity(arity)) {}

    static MultiPoly constant(int arity, const Rational& c) {
        MultiPoly p(arity);
        p.add_term(Monomial::unit(arity), c);
        return p;
    }

    static MultiPoly one(int arity) { return constant(arity, Rational(1)); }

    static MultiPoly variable(int arity, int index, int power = 1) {
        MultiPoly p(arity);
        p.add_term(Monomial::variable(arity, index, power), Rational(1));
        return p;
    }

    static MultiPoly term(const Monomial& m, const Rational& c) {
        MultiPoly p(m.arity());
        p.add_term(m, c);
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    MultiPoly& add_term(const Monomial& m, const Rational& c) {
        if (m.arity() != arity_) throw std::invalid_argument("MultiPoly: arity mismatch");
        if (c.is_zero()) return *this;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_same_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_same_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    MultiPoly operator-() const {
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same_arity(b);
        MultiPoly r(a.arity_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coef] : terms_) coef *= c;
        return *this;
    }

    friend MultiPoly operator*(MultiPoly p, const Rational& c) { return p *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly p) { return p *= c; }

    // p^e by repeated squaring; p^0 = 1
    MultiPoly pow(long e) const {
        if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
        MultiPoly result = one(arity_);
        MultiPoly base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base = (e >>= 1) ? base * base : std::move(base);
        }
        return result;
    }

    // formal partial derivative with respect to z_var (1-based)
    MultiPoly partial_derivative(int var) const {
        if (var < 1 || var > arity_) throw std::invalid_argument("MultiPoly: variable index out of range");
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(var);
            if (e == 0) continue;
            std::vector<int> exps = m.exponents();
            exps[static_cast<std::size_t>(var - 1)] = e - 1;
            r.add_term(Monomial(std::move(exps)), c * Rational(e));
        }
        return r;
    }

    std::pair<Monomial, Rational> leading_term() const {
        if (is_zero()) throw std::domain_error("MultiPoly: leading term of the zero polynomial");
        return *terms_.begin();
    }

    Rational coefficient_of(const Monomial& m) const {
        if (m.arity() != arity_) throw std::invalid_argument("MultiPoly: arity mismatch");
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // -1 for the zero polynomial
    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    bool is_homogeneous(int degree) const {
        for (const auto& [m, c] : terms_)
            if (m.total_degree() != degree) return false;
        return true;
    }

    // highest exponent of z_var over all terms; -1 for the zero polynomial
    int max_exponent(int var) const {
        if (var < 1 || var > arity_) throw std::invalid_argument("MultiPoly: variable index out of range");
        int e = -1;
        for (const auto& [m, c] : terms_) e = std::max(e, m.exponent(var));
        return e;
    }

    // z_var := 0
    MultiPoly substitute_zero(int var) const {
        if (var < 1 || var > arity_) throw std::invalid_argument("MultiPoly: variable index out of range");
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_)
            if (m.exponent(var) == 0) r.add_term(m, c);
        return r;
    }

    // z_from := z_to, keeping the arity
    MultiPoly rename_variable(int from, int to) const {
        if (from < 1 || from > arity_ || to < 1 || to > arity_)
            throw std::invalid_argument("MultiPoly: variable index out of range");
        if (from == to) return *this;
        MultiPoly r(arity_);
        for (const auto& [m, c] : terms_) {
            std::vector<int> exps = m.exponents();
            exps[static_cast<std::size_t>(to - 1)] += exps[static_cast<std::size_t>(from - 1)];
            exps[static_cast<std::size_t>(from - 1)] = 0;
            r.add_term(Monomial(std::move(exps)), c);
        }
        return r;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        if (static_cast<int>(z.size()) != arity_) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
        std::complex<double> sum = 0.0;
        for (const auto& [m, c] : terms_) {
            std::complex<double> t = c.to_double();
            for (int i = 1; i <= arity_; ++i)
                for (int e = 0; e < m.exponent(i); ++e) t *= z[static_cast<std::size_t>(i - 1)];
            sum += t;
        }
        return sum;
    }

    Rational eval_exact(const std::vector<Rational>& z) const {
        if (static_cast<int>(z.size()) != arity_) throw std::invalid_argument("MultiPoly::eval_exact: dimension mismatch");
        Rational sum(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int i = 1; i <= arity_; ++i)
                for (int e = 0; e < m.exponent(i); ++e) t *= z[static_cast<std::size_t>(i - 1)];
            sum += t;
        }
        return sum;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    static int check_arity(int arity) {
        if (arity < 1) throw std::invalid_argument("MultiPoly: arity must be >= 1");
        return arity;
    }
    void check_same_arity(const MultiPoly& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("MultiPoly: arity mismatch");
    }

    int arity_;
    TermMap terms_;
};

// Exact quotient p / d, or nullopt when d does not divide p. Long division
// against the single divisor d under the monomial order: a step whose
// leading term is not divisible by lt(d) means d does not divide p.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d) {
    if (p.arity() != d.arity()) throw std::invalid_argument("divide_exact: arity mismatch");
    if (d.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    MultiPoly q(p.arity());
    MultiPoly r = p;
    const auto [dm, dc] = d.leading_term();
    while (!r.is_zero()) {
        const auto [rm, rc] = r.leading_term();
        if (!dm.divides(rm)) return std::nullopt;
        const Monomial qm = rm / dm;
        const Rational qc = rc / dc;
        q.add_term(qm, qc);
        r -= MultiPoly::term(qm, qc) * d;
    }
    return q;
}

// true iff p = d*q exactly for some polynomial q
inline bool divides(const MultiPoly& d, const MultiPoly& p) { return divide_exact(p, d).has_value(); }

}  // namespace critval
