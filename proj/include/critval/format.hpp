#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multipoly.hpp"

namespace critval {

// Canonical textual form: terms in decreasing monomial order, joined by
// " + ", each term "num/den * z1^e1 * ... * zm^em" with every variable
// listed and the sign carried by the numerator. The zero polynomial
// prints as "0". parse_poly(print_poly(p), p.arity()) == p, bit for bit.
inline std::string print_poly(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) out << " + ";
        first = false;
        out << c.numerator().get_str() << "/" << c.denominator().get_str();
        for (int i = 1; i <= p.arity(); ++i) out << " * z" << i << "^" << m.exponent(i);
    }
    return out.str();
}

namespace detail {

struct PolyCursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() { return pos < text.size() ? text[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse_poly: " + what + " at position " + std::to_string(pos));
    }

    Integer integer() {
        skip_ws();
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) digits += text[pos++];
        if (digits.empty()) fail("expected an integer");
        return Integer(digits, 10);
    }
};

}  // namespace detail

// Parse a polynomial in z1..z<arity>. Accepts the canonical form and
// relaxed variants: bare integer coefficients, omitted coefficient or
// exponent (both default to 1), omitted variables, '-' term separators,
// factors in any order. Duplicate monomials are merged.
inline MultiPoly parse_poly(const std::string& text, int arity) {
    MultiPoly p(arity);
    detail::PolyCursor cur{text};
    if (cur.done()) cur.fail("empty input");
    if (cur.peek() == '0') {
        std::size_t save = cur.pos;
        ++cur.pos;
        if (cur.done()) return p;
        cur.pos = save;
    }
    while (!cur.done()) {
        int sign = 1;
        while (cur.peek() == '+' || cur.peek() == '-') {
            if (cur.peek() == '-') sign = -sign;
            ++cur.pos;
            cur.skip_ws();
        }
        Rational coef(sign);
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            Integer num = cur.integer();
            cur.skip_ws();
            Integer den(1);
            if (cur.peek() == '/') {
                ++cur.pos;
                den = cur.integer();
            }
            coef = Rational(num, den) * Rational(sign);
            saw_factor = true;
        }
        std::vector<int> exps(static_cast<std::size_t>(arity), 0);
        for (;;) {
            cur.skip_ws();
            bool separator = false;
            if (saw_factor && cur.peek() == '*') {
                ++cur.pos;
                cur.skip_ws();
                separator = true;
            }
            if (cur.peek() != 'z') {
                if (separator) cur.fail("expected a variable after '*'");
                break;
            }
            ++cur.pos;
            Integer idx = cur.integer();
            if (idx < 1 || idx > arity) cur.fail("variable index out of range");
            int e = 1;
            cur.skip_ws();
            if (cur.peek() == '^') {
                ++cur.pos;
                Integer exp = cur.integer();
                if (exp > 100000) cur.fail("exponent too large");
                e = static_cast<int>(exp.get_si());
            }
            exps[static_cast<std::size_t>(idx.get_si()) - 1] += e;
            saw_factor = true;
        }
        if (!saw_factor) cur.fail("expected a term");
        p.add_term(Monomial(exps), coef);
    }
    return p;
}

}  // namespace critval
