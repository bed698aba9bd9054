#pragma once

#include "cartanlim/hreal.hpp"

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cartanlim {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Grammar:
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := primary ('/' primary)*
//   primary  := rational | 't' ['^' exponent] | '(' expr ')' | '-' primary
//   exponent := '(' rational ')' | digits
//   rational := ['-'] digits ['/' digits]
// Division inside a factor binds tighter than '*' and associates left.
namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    HReal parse() {
        HReal v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    HReal expr() {
        HReal v = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    HReal term() {
        HReal v = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                v *= factor();
            } else {
                return v;
            }
        }
    }

    HReal factor() {
        HReal v = primary();
        for (;;) {
            skip_ws();
            if (!accept('/')) return v;
            const std::size_t at = pos_;
            HReal d = primary();
            if (d.is_zero()) throw ParseError("division by zero", at);
            v /= d;
        }
    }

    HReal primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -primary();
        }
        if (c == '(') {
            ++pos_;
            HReal v = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (c == 't') {
            ++pos_;
            skip_ws();
            if (accept('^')) return HReal::t_power(exponent());
            return HReal::t();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return HReal(rational(false));
        fail("expected a rational, 't', or '('");
    }

    Rational exponent() {
        skip_ws();
        if (accept('(')) {
            Rational e = rational(true);
            skip_ws();
            if (!accept(')')) fail("expected ')' after exponent");
            return e;
        }
        return Rational(digits());
    }

    Rational rational(bool allow_sign) {
        skip_ws();
        bool neg = false;
        if (allow_sign && accept('-')) neg = true;
        BigInt n = digits();
        BigInt d = 1;
        // A '/' directly between digit runs is part of the rational literal.
        if (pos_ < text_.size() && text_[pos_] == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            d = digits();
            if (d == 0) throw ParseError("division by zero", pos_);
        }
        Rational r(n, d);
        return neg ? Rational(-r) : r;
    }

    BigInt digits() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected digits");
        return BigInt(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    const std::string& text_;
    std::size_t pos_ = 0;
};

inline std::string poly_str(const PuiseuxPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const Rational a = abs_of(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (e == 0) {
            out += rational_str(a);
        } else {
            if (a != 1) out += rational_str(a) + "*";
            out += e == 1 ? "t" : "t^(" + rational_str(e) + ")";
        }
    }
    return out;
}

}  // namespace detail

/// Parses an expression in the grammar above into an exact field element.
inline HReal parse_hreal(const std::string& text) { return detail::ExprParser(text).parse(); }

/// Canonical printer: terms in increasing exponent order; a nontrivial
/// denominator prints as "(num)/(den)".  parse(print(x)) == x, and printing is
/// a fixed point of print . parse.
inline std::string to_string(const HReal& x) {
    if (x.den().is_one()) return detail::poly_str(x.num());
    return "(" + detail::poly_str(x.num()) + ")/(" + detail::poly_str(x.den()) + ")";
}

}  // namespace cartanlim
