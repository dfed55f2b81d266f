#ifndef LAXFORGE_RATIONAL_HPP
#define LAXFORGE_RATIONAL_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace laxforge
{

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational &q)
{
    return q.get_str();
}

inline Rational rational_from_string(std::string_view s)
{
    Rational q;
    if (q.set_str(std::string(s), 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    }
    q.canonicalize();
    return q;
}

// Exact element of Q(i).
class GaussRational
{
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re) {}
    GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

    const Rational &re() const { return re_; }
    const Rational &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }

    GaussRational &operator+=(const GaussRational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational &operator-=(const GaussRational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational &operator*=(const GaussRational &o)
    {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussRational &operator/=(const GaussRational &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("division by zero in Q(i)");
        }
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        GaussRational inv(o.re_ / n, -o.im_ / n);
        return *this *= inv;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
    friend GaussRational operator-(const GaussRational &a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussRational &a, const GaussRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational &a, const GaussRational &b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // "a/b+c/d*i" form; the imaginary part is omitted when zero.
    std::string to_string() const
    {
        if (sgn(im_) == 0) {
            return re_.get_str();
        }
        std::string s;
        if (sgn(re_) != 0) {
            s = re_.get_str();
            s += sgn(im_) > 0 ? "+" : "-";
        } else if (sgn(im_) < 0) {
            s = "-";
        }
        Rational a = abs(im_);
        s += a == 1 ? std::string("i") : a.get_str() + "*i";
        return s;
    }

    static GaussRational from_string(std::string_view s)
    {
        auto trim = [](std::string_view v) {
            while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
            return v;
        };
        s = trim(s);
        if (s.empty()) {
            throw std::invalid_argument("empty coefficient string");
        }
        if (s.back() != 'i') {
            return GaussRational(rational_from_string(s));
        }
        // Split at the last sign that is not the leading one.
        std::string_view body = s.substr(0, s.size() - 1);
        if (!body.empty() && body.back() == '*') body.remove_suffix(1);
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') {
                split = k;
                break;
            }
        }
        Rational re = 0;
        std::string_view im_part = body;
        if (split != std::string_view::npos) {
            re = rational_from_string(trim(body.substr(0, split)));
            im_part = body.substr(split);
        }
        std::string im_str(trim(im_part));
        if (!im_str.empty() && im_str.front() == '+') im_str.erase(0, 1);
        if (im_str.empty() || im_str == "-") im_str += "1";
        if (im_str.size() > 1 && im_str[0] == '-' && im_str[1] == '+') im_str.erase(1, 1);
        if (im_str.size() > 1 && im_str[0] == '-' && im_str[1] == '-') im_str.erase(0, 2);
        return GaussRational(re, rational_from_string(im_str));
    }

    friend std::ostream &operator<<(std::ostream &os, const GaussRational &g) { return os << g.to_string(); }

    std::size_t hash() const
    {
        std::hash<std::string> h;
        return h(re_.get_str()) ^ (h(im_.get_str()) * 31u);
    }

private:
    Rational re_{0};
    Rational im_{0};
};

} // namespace laxforge

#endif
