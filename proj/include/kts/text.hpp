/*
   Copyright 2026 The kts Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file text.hpp
 * @brief Human-readable notation for elements and polynomials.
 *
 * Elements are written as polynomials in the generator d, highest power first: "2*d^3+2*d^2+1".
 * Polynomials in T put each non-constant coefficient in parentheses: "(d+2)*T + 1".
 *
 * The parser accepts integers, d, T, parentheses and the operators + - * ^, ignoring whitespace.
 * Exponents are nonnegative integer literals.
 */

#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poly.hpp"

namespace kts {

inline std::string format_element(const FieldElement& a) {
    const auto c = a.coeffs();
    if (c.empty()) return "0";
    std::string out;
    for (std::size_t k = c.size(); k-- > 0;) {
        if (!c[k]) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += std::to_string(c[k]);
            continue;
        }
        if (c[k] != 1) out += std::to_string(c[k]) + "*";
        out += 'd';
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

inline std::string format_poly(const Poly& g) {
    if (g.is_zero()) return "0";
    std::string out;
    const auto& c = g.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string e = format_element(c[k]);
        const bool compound = e.find('+') != std::string::npos;
        if (k == 0) {
            out += e;
            continue;
        }
        if (!c[k].is_one()) out += (compound ? "(" + e + ")" : e) + "*";
        out += 'T';
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

namespace detail {

class ExprParser {
  public:
    ExprParser(const Field& field, std::string_view text, bool allow_t) : field_(field), text_(text), allow_t_(allow_t) {}

    Poly parse() {
        Poly v = expr();
        skip();
        if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return v;
    }

  private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char ch) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        Poly acc = term();
        for (;;) {
            if (eat('+')) {
                acc = acc + term();
            } else if (eat('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = unary();
        while (eat('*')) acc = acc * unary();
        return acc;
    }

    Poly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = atom();
        if (!eat('^')) return base;
        skip();
        const std::size_t at = pos_;
        const std::uint64_t e = integer("exponent");
        if (base.degree() <= 0) {
            const FieldElement c = base.is_zero() ? FieldElement(field_) : base.coeffs()[0];
            return Poly::constant(pow(c, static_cast<WideUint>(e)));
        }
        if (e > 4096) throw ParseError("exponent too large for a polynomial", at);
        Poly r = Poly::constant(FieldElement::constant(field_, 1));
        for (std::uint64_t i = 0; i < e; ++i) r = r * base;
        return r;
    }

    Poly atom() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Poly v = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::uint64_t n = integer("number");
            return Poly::constant(FieldElement::constant(field_, static_cast<std::int64_t>(n % field_->characteristic())));
        }
        if (ch == 'd') {
            if (field_->degree() == 1) throw ParseError("generator 'd' is not defined over a prime field", pos_);
            ++pos_;
            return Poly::constant(FieldElement::generator(field_));
        }
        if (ch == 'T') {
            if (!allow_t_) throw ParseError("'T' is not allowed in a field element", pos_);
            ++pos_;
            return Poly::variable(field_);
        }
        throw ParseError(std::string("unexpected '") + ch + "'", pos_);
    }

    std::uint64_t integer(const char* what) {
        skip();
        const std::size_t start = pos_;
        std::uint64_t n = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const unsigned digit = static_cast<unsigned>(text_[pos_] - '0');
            if (n > (UINT64_MAX - digit) / 10) throw ParseError(std::string(what) + " is too large", start);
            n = n * 10 + digit;
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
        return n;
    }

    const Field& field_;
    std::string_view text_;
    bool allow_t_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline FieldElement parse_element(const Field& field, std::string_view text) {
    const Poly v = detail::ExprParser(field, text, false).parse();
    return v.is_zero() ? FieldElement(field) : v.coeffs()[0];
}

inline Poly parse_poly(const Field& field, std::string_view text) { return detail::ExprParser(field, text, true).parse(); }

/// Comma-separated residues, e.g. "2,2,1".
inline std::vector<Residue> parse_residue_list(std::string_view text) {
    std::vector<Residue> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        const std::size_t start = pos;
        std::uint64_t n = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            n = n * 10 + static_cast<unsigned>(text[pos] - '0');
            if (n > 0xFFFFFFFFull) throw ParseError("residue is too large", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected a nonnegative integer", start);
        out.push_back(static_cast<Residue>(n));
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError(std::string("unexpected '") + text[pos] + "'", pos);
        ++pos;
    }
    return out;
}

}  // namespace kts
