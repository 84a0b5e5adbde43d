#pragma once

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace critval {

// Exponent vector over the variables z1..zm.
//
// The monomial order used throughout the library compares the exponent of
// zm first, then z(m-1), and so on down to z1: the highest-index variable
// dominates. Note this is the REVERSE of the common lex convention in
// which z1 is compared first.
class Monomial {
public:
    explicit Monomial(int arity) : exps_(static_cast<std::size_t>(check_arity(arity)), 0) {}

    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
        check_arity(static_cast<int>(exps_.size()));
        for (int e : exps_)
            if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
    }

    static Monomial unit(int arity) { return Monomial(arity); }

    static Monomial variable(int arity, int index, int power = 1) {
        Monomial m(arity);
        if (power < 0) throw std::invalid_argument("Monomial: negative exponent");
        m.exps_[static_cast<std::size_t>(m.check_index(index) - 1)] = power;
        return m;
    }

    int arity() const { return static_cast<int>(exps_.size()); }

    // 1-based variable index
    int exponent(int index) const { return exps_[static_cast<std::size_t>(check_index(index) - 1)]; }

    int total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

    const std::vector<int>& exponents() const { return exps_; }

    bool divides(const Monomial& other) const {
        check_same_arity(other);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& other) const {
        check_same_arity(other);
        Monomial r = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
        return r;
    }

    Monomial operator/(const Monomial& other) const {
        check_same_arity(other);
        Monomial r = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            r.exps_[i] -= other.exps_[i];
            if (r.exps_[i] < 0) throw std::domain_error("Monomial: quotient would have negative exponent");
        }
        return r;
    }

    // negative/zero/positive, comparing the exponent of zm first
    static int compare(const Monomial& a, const Monomial& b) {
        a.check_same_arity(b);
        for (std::size_t i = a.exps_.size(); i-- > 0;) {
            if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exps_ != b.exps_; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Monomial& a, const Monomial& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Monomial& a, const Monomial& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Monomial& a, const Monomial& b) { return compare(a, b) >= 0; }

private:
    static int check_arity(int arity) {
        if (arity < 1) throw std::invalid_argument("Monomial: arity must be >= 1");
        return arity;
    }
    int check_index(int index) const {
        if (index < 1 || index > arity()) throw std::invalid_argument("Monomial: variable index out of range");
        return index;
    }
    void check_same_arity(const Monomial& other) const {
        if (arity() != other.arity()) throw std::invalid_argument("Monomial: arity mismatch");
    }

    std::vector<int> exps_;
};

// Map comparator placing the largest monomial first.
struct MonomialDescending {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

}  // namespace critval
