#pragma once

#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace sasolve {

// Grammar (whitespace is insignificant, implicit multiplication is rejected):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { "*" unary } ;
//   unary   = ("+" | "-") unary | power ;
//   power   = primary [ "^" integer ] ;
//   primary = number | symbol | "(" expr ")" ;
//   number  = integer [ "/" integer ] ;
//   symbol  = letter { letter | digit | "_" } ;

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, OrderPtr order) : text_(text), order_(std::move(order)) {}

    Polynomial parse()
    {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')
                throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
            throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        return p;
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Polynomial unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", at);
        if (pos_ < text_.size() && text_[pos_] == '(') {
            // Allow a parenthesised non-negative integer, e.g. x^(2)
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", pos_);
            auto e = integer_literal();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return base.pow(to_exponent(e, at));
        }
        auto e = integer_literal();
        return base.pow(to_exponent(e, at));
    }

    static std::uint32_t to_exponent(const Integer& e, std::size_t at)
    {
        if (e > 100000) throw ParseError("exponent too large", at);
        return static_cast<std::uint32_t>(e.get_ui());
    }

    Integer integer_literal()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", start);
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Polynomial primary()
    {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer_literal();
            std::size_t save = pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw ParseError("'/' is only allowed inside rational literals", pos_);
                Integer den = integer_literal();
                if (den == 0) throw ParseError("zero denominator", pos_);
                Rational q(num, den);
                q.canonicalize();
                return Polynomial(order_, q);
            }
            pos_ = save;
            return Polynomial(order_, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto idx = order_->index_of(name);
            if (!idx) throw ParseError("unknown symbol '" + name + "'", start);
            return Polynomial::variable(order_, *idx);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    OrderPtr order_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const OrderPtr& order)
{
    return detail::PolynomialParser(text, order).parse().lifted(order);
}

}  // namespace sasolve
