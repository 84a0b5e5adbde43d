#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "multipoly.hpp"

namespace critval {

// Polynomial in one distinguished variable (w, say) whose coefficients
// live in the ring of MultiPoly over z1..zm. coeffs_[k] is the
// coefficient of w^k; trailing zero coefficients are trimmed, so the
// zero polynomial has an empty coefficient list.
class UniPoly {
public:
    explicit UniPoly(int arity) : arity_(check_arity(arity)) {}

    static UniPoly constant(const MultiPoly& c) {
        UniPoly p(c.arity());
        p.coeffs_.push_back(c);
        p.trim();
        return p;
    }

    static UniPoly constant(int arity, const Rational& c) {
        return constant(MultiPoly::constant(arity, c));
    }

    // the distinguished variable itself
    static UniPoly distinguished(int arity) {
        UniPoly p(arity);
        p.coeffs_.push_back(MultiPoly(arity));
        p.coeffs_.push_back(MultiPoly::one(arity));
        return p;
    }

    // w - z_var
    static UniPoly linear_factor(int arity, int var) {
        UniPoly p(arity);
        p.coeffs_.push_back(-MultiPoly::variable(arity, var));
        p.coeffs_.push_back(MultiPoly::one(arity));
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return coeffs_.empty(); }

    // degree in the distinguished variable; -1 for the zero polynomial
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    // coefficient of w^k (zero polynomial when k is out of range)
    MultiPoly coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return MultiPoly(arity_);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    MultiPoly leading_coeff() const {
        if (is_zero()) throw std::domain_error("UniPoly: leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    UniPoly& operator+=(const UniPoly& o) {
        check_same_arity(o);
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), MultiPoly(arity_));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }

    UniPoly& operator-=(const UniPoly& o) {
        check_same_arity(o);
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), MultiPoly(arity_));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }

    UniPoly operator-() const {
        UniPoly r(arity_);
        r.coeffs_.reserve(coeffs_.size());
        for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
        return r;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        a.check_same_arity(b);
        UniPoly r(a.arity_);
        if (a.is_zero() || b.is_zero()) return r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, MultiPoly(a.arity_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }

    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    UniPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& coef : coeffs_) coef *= c;
        return *this;
    }

    friend UniPoly operator*(UniPoly p, const Rational& c) { return p *= c; }
    friend UniPoly operator*(const Rational& c, UniPoly p) { return p *= c; }

    UniPoly pow(long e) const {
        if (e < 0) throw std::invalid_argument("UniPoly::pow: negative exponent");
        UniPoly result = constant(arity_, Rational(1));
        UniPoly base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base = (e >>= 1) ? base * base : std::move(base);
        }
        return result;
    }

    // d/dw
    UniPoly derivative() const {
        UniPoly r(arity_);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            r.coeffs_.push_back(coeffs_[k] * Rational(static_cast<long>(k)));
        r.trim();
        return r;
    }

    // term-wise antiderivative in w with zero constant (definite integral from 0)
    UniPoly integrate() const {
        UniPoly r(arity_);
        if (is_zero()) return r;
        r.coeffs_.assign(coeffs_.size() + 1, MultiPoly(arity_));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            r.coeffs_[k + 1] = coeffs_[k] * Rational(1, static_cast<long>(k) + 1);
        r.trim();
        return r;
    }

    // w := z_var, collapsing into the coefficient ring
    MultiPoly substitute(int var) const {
        if (var < 1 || var > arity_) throw std::invalid_argument("UniPoly::substitute: variable index out of range");
        const MultiPoly zv = MultiPoly::variable(arity_, var);
        MultiPoly r(arity_);
        for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * zv + coeffs_[k];
        return r;
    }

    std::complex<double> eval(std::complex<double> w, const std::vector<std::complex<double>>& z) const {
        std::complex<double> r = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * w + coeffs_[k].eval(z);
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.arity_ == b.arity_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

private:
    static int check_arity(int arity) {
        if (arity < 1) throw std::invalid_argument("UniPoly: arity must be >= 1");
        return arity;
    }
    void check_same_arity(const UniPoly& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("UniPoly: arity mismatch");
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    int arity_;
    std::vector<MultiPoly> coeffs_;
};

}  // namespace critval
