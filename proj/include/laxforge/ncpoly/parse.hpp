#ifndef LAXFORGE_NCPOLY_PARSE_HPP
#define LAXFORGE_NCPOLY_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <laxforge/ncpoly/laurent.hpp>

namespace laxforge
{

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &msg, std::size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail
{

// Value during evaluation: either a shape-free numeric polynomial in lam, or
// a block-valued series.
struct ParsedValue {
    bool is_numeric = true;
    std::map<int, GaussRational> numeric; // power of lam -> coefficient
    ScalarSeries series;
};

class ExpressionParser
{
public:
    ExpressionParser(std::string_view text, Mode mode) : text_(text), mode_(mode) {}

    ScalarSeries parse(std::optional<Shape> expected = std::nullopt)
    {
        ParsedValue v = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        if (v.is_numeric) {
            if (expected) return realize(v, *expected);
            if (mode_ == Mode::matrix && !numeric_is_zero(v)) {
                throw ParseError("cannot infer the block shape of a constant expression in matrix mode", 0);
            }
            return realize(v, scalar_shape);
        }
        if (expected && mode_ == Mode::matrix && shape_of(v) != *expected) {
            throw ParseError("expression has shape " + shape_of(v).to_string() + ", expected " + expected->to_string(), 0);
        }
        return v.series;
    }

private:
    static bool numeric_is_zero(const ParsedValue &v)
    {
        for (const auto &[k, c] : v.numeric) {
            if (!c.is_zero()) return false;
        }
        return true;
    }

    ScalarSeries realize(const ParsedValue &v, Shape shape) const
    {
        if (!v.is_numeric) return v.series;
        if (shape.rows != shape.cols && !numeric_is_zero(v)) {
            throw ParseError("constant added to a non-square block " + shape.to_string(), pos_);
        }
        ScalarSeries s(NCPolynomial(mode_, shape));
        for (const auto &[k, c] : v.numeric) {
            if (!c.is_zero()) s.set(k, NCPolynomial::constant(mode_, shape, c));
        }
        return s;
    }

    static Shape shape_of(const ParsedValue &v) { return v.series.zero_coefficient().shape(); }

    ParsedValue add(ParsedValue a, const ParsedValue &b, bool subtract, std::size_t at) const
    {
        GaussRational sign = subtract ? GaussRational(-1) : GaussRational(1);
        if (a.is_numeric && b.is_numeric) {
            for (const auto &[k, c] : b.numeric) a.numeric[k] += c * sign;
            return a;
        }
        try {
            Shape shape = a.is_numeric ? shape_of(b) : shape_of(a);
            ScalarSeries lhs = realize(a, shape);
            ScalarSeries rhs = realize(b, shape);
            ParsedValue r;
            r.is_numeric = false;
            r.series = subtract ? lhs - rhs : lhs + rhs;
            return r;
        } catch (const ShapeError &e) {
            throw ParseError(e.what(), at);
        }
    }

    ParsedValue multiply(const ParsedValue &a, const ParsedValue &b, std::size_t at) const
    {
        if (a.is_numeric && b.is_numeric) {
            ParsedValue r;
            for (const auto &[ka, ca] : a.numeric) {
                for (const auto &[kb, cb] : b.numeric) r.numeric[ka + kb] += ca * cb;
            }
            return r;
        }
        try {
            ParsedValue r;
            r.is_numeric = false;
            if (a.is_numeric || b.is_numeric) {
                const ParsedValue &num = a.is_numeric ? a : b;
                const ParsedValue &ser = a.is_numeric ? b : a;
                r.series = ScalarSeries(ser.series.zero_coefficient());
                for (const auto &[k, c] : num.numeric) r.series += ser.series.shifted(k) * c;
                return r;
            }
            r.series = a.series * b.series;
            return r;
        } catch (const ShapeError &e) {
            throw ParseError(e.what(), at);
        }
    }

    ParsedValue parse_sum()
    {
        skip_ws();
        bool negate = false;
        if (peek() == '-' || peek() == '+') {
            negate = get() == '-';
        }
        ParsedValue acc = parse_product();
        if (negate) acc = multiply(numeric(GaussRational(-1)), acc, pos_);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return acc;
            std::size_t at = pos_;
            get();
            ParsedValue rhs = parse_product();
            acc = add(std::move(acc), rhs, c == '-', at);
        }
    }

    ParsedValue parse_product()
    {
        ParsedValue acc = parse_power();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return acc;
            std::size_t at = pos_;
            get();
            ParsedValue rhs = parse_power();
            if (c == '*') {
                acc = multiply(acc, rhs, at);
                continue;
            }
            if (!rhs.is_numeric || rhs.numeric.size() != 1 || rhs.numeric.begin()->first != 0
                || rhs.numeric.begin()->second.is_zero()) {
                throw ParseError("division only by a nonzero number", at);
            }
            acc = multiply(acc, numeric(GaussRational(1) / rhs.numeric.begin()->second), at);
        }
    }

    ParsedValue parse_power()
    {
        std::size_t at = pos_;
        ParsedValue base = parse_unary();
        skip_ws();
        if (peek() != '^') return base;
        get();
        skip_ws();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) get();
        if (start == pos_) throw ParseError("expected a non-negative integer exponent", pos_);
        int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
        ParsedValue r = numeric(GaussRational(1));
        for (int k = 0; k < e; ++k) r = multiply(r, base, at);
        return r;
    }

    ParsedValue parse_unary()
    {
        skip_ws();
        if (peek() == '-') {
            std::size_t at = pos_;
            get();
            return multiply(numeric(GaussRational(-1)), parse_unary(), at);
        }
        return parse_primary();
    }

    ParsedValue parse_primary()
    {
        skip_ws();
        std::size_t at = pos_;
        char c = peek();
        if (c == '(') {
            get();
            ParsedValue v = parse_sum();
            skip_ws();
            if (get() != ')') throw ParseError("expected ')'", pos_ ? pos_ - 1 : 0);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) get();
            return numeric(GaussRational(rational_from_string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek()))) get();
            std::string name(text_.substr(start, pos_ - start));
            if (name == "lam") {
                ParsedValue v;
                v.numeric[1] = GaussRational(1);
                return v;
            }
            if (name == "i") return numeric(GaussRational::i());
            auto base = base_from_name(name);
            if (!base) throw ParseError("unknown symbol '" + name + "'", start);
            FieldAtom a{*base, 0, 0, 0};
            while (peek() == '_') {
                std::size_t us = pos_;
                get();
                char d = get();
                if (d == 't') {
                    a = a.t_derivative();
                } else if (d == 'x') {
                    int flow = 2;
                    std::size_t ds = pos_;
                    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
                    if (ds != pos_) flow = std::stoi(std::string(text_.substr(ds, pos_ - ds)));
                    try {
                        a = a.x_derivative(flow);
                    } catch (const std::logic_error &e) {
                        throw ParseError(e.what(), us);
                    }
                } else {
                    throw ParseError("expected derivative suffix _t or _x", us);
                }
            }
            if (is_parameter(a.base) && (a.dt || a.dx)) throw ParseError("derivative of a constant", start);
            try {
                ParsedValue v;
                v.is_numeric = false;
                NCPolynomial p = NCPolynomial::from_atom(mode_, a);
                v.series = ScalarSeries(NCPolynomial(mode_, p.shape()));
                v.series.set(0, std::move(p));
                return v;
            } catch (const ShapeError &e) {
                throw ParseError(e.what(), start);
            }
        }
        if (c == '\0') throw ParseError("unexpected end of expression", at);
        throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
    }

    static ParsedValue numeric(const GaussRational &c)
    {
        ParsedValue v;
        v.numeric[0] = c;
        return v;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    std::string_view text_;
    Mode mode_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parses an expression in u, uh, pi, pih (also K11, K22, xip, xim, kinvp,
// kinvm, i, lam) with repeatable _t / _x / _x<n> suffixes, + - * / ^ and
// parentheses, into a polynomial in lam. `shape` fixes the block of constant
// expressions in matrix mode.
inline ScalarSeries parse_series(std::string_view text, Mode mode, std::optional<Shape> shape = std::nullopt)
{
    return detail::ExpressionParser(text, mode).parse(shape);
}

// As parse_series, rejecting any dependence on lam.
inline NCPolynomial parse_polynomial(std::string_view text, Mode mode, std::optional<Shape> shape = std::nullopt)
{
    ScalarSeries s = parse_series(text, mode, shape);
    for (const auto &[k, c] : s.coefficients()) {
        if (k != 0) throw ParseError("unexpected spectral parameter in a polynomial expression", 0);
    }
    return s.coeff(0);
}

} // namespace laxforge

#endif
