#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace critval {

// Tuple a = (a_1, ..., a_m) of positive integer multiplicities with
// n = a_1 + ... + a_m cached.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> a) : a_(std::move(a)) {
        if (a_.empty()) throw std::invalid_argument("MultiIndex: at least one entry required");
        for (int v : a_)
            if (v < 1) throw std::invalid_argument("MultiIndex: entries must be positive");
        n_ = std::accumulate(a_.begin(), a_.end(), 0);
    }

    MultiIndex(std::initializer_list<int> a) : MultiIndex(std::vector<int>(a)) {}

    int m() const { return static_cast<int>(a_.size()); }
    int n() const { return n_; }
    int at(int i) const {
        if (i < 1 || i > m()) throw std::invalid_argument("MultiIndex: index out of range");
        return a_[static_cast<std::size_t>(i - 1)];
    }
    const std::vector<int>& values() const { return a_; }

    // (a_1, ..., a_k)
    MultiIndex prefix(int k) const {
        if (k < 1 || k > m()) throw std::invalid_argument("MultiIndex: prefix length out of range");
        return MultiIndex(std::vector<int>(a_.begin(), a_.begin() + k));
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(a_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const MultiIndex& x, const MultiIndex& y) { return x.a_ == y.a_; }
    friend bool operator!=(const MultiIndex& x, const MultiIndex& y) { return !(x == y); }

private:
    std::vector<int> a_;
    int n_;
};

// n! / (a_1! ... a_m!), exact
inline Integer multinomial(const MultiIndex& a) {
    Integer result = factorial(a.n());
    for (int i = 1; i <= a.m(); ++i) result /= factorial(a.at(i));
    return result;
}

}  // namespace critval
