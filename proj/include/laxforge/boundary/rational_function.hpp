#ifndef LAXFORGE_BOUNDARY_RATIONAL_FUNCTION_HPP
#define LAXFORGE_BOUNDARY_RATIONAL_FUNCTION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/ncpoly/polynomial.hpp>
#include <laxforge/rational.hpp>

namespace laxforge::boundary
{

// Exponent vector keyed by variable name; zero exponents are never stored.
using Monomial = std::map<std::string, int>;

// Commutative polynomial with Gaussian-rational coefficients.
class CPoly
{
public:
    CPoly() = default;
    CPoly(long c) : CPoly(GaussRational(c)) {}
    CPoly(const GaussRational &c)
    {
        if (!c.is_zero()) terms_[{}] = c;
    }

    static CPoly var(const std::string &name, int power = 1)
    {
        CPoly p;
        if (power == 0) {
            p.terms_[{}] = 1;
        } else {
            p.terms_[{{name, power}}] = 1;
        }
        return p;
    }

    static CPoly i() { return CPoly(GaussRational::i()); }

    const std::map<Monomial, GaussRational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    GaussRational constant_term() const
    {
        auto it = terms_.find({});
        return it == terms_.end() ? GaussRational() : it->second;
    }

    void add_term(const Monomial &m, const GaussRational &c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    CPoly &operator+=(const CPoly &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    CPoly &operator-=(const CPoly &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    CPoly &operator*=(const GaussRational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, v] : terms_) v *= c;
        return *this;
    }

    friend CPoly operator+(CPoly a, const CPoly &b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly &b) { return a -= b; }
    friend CPoly operator-(CPoly a) { return a *= GaussRational(-1); }
    friend CPoly operator*(CPoly a, const GaussRational &c) { return a *= c; }

    friend CPoly operator*(const CPoly &a, const CPoly &b)
    {
        CPoly r;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
        }
        return r;
    }

    CPoly &operator*=(const CPoly &o) { return *this = *this * o; }

    friend bool operator==(const CPoly &a, const CPoly &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CPoly &a, const CPoly &b) { return !(a == b); }

    int degree_in(const std::string &v) const
    {
        int d = 0;
        for (const auto &[m, c] : terms_) {
            auto it = m.find(v);
            if (it != m.end()) d = std::max(d, it->second);
        }
        return d;
    }

    bool contains(const std::string &v) const
    {
        for (const auto &[m, c] : terms_) {
            if (m.count(v)) return true;
        }
        return false;
    }

    // Coefficients of v^0, v^1, ...; v must appear with non-negative powers.
    std::vector<CPoly> coefficients_in(const std::string &v) const
    {
        std::vector<CPoly> out(static_cast<std::size_t>(degree_in(v)) + 1);
        for (const auto &[m, c] : terms_) {
            Monomial rest = m;
            int k = 0;
            if (auto it = rest.find(v); it != rest.end()) {
                k = it->second;
                rest.erase(it);
            }
            if (k < 0) throw std::domain_error("negative power of " + v);
            out[static_cast<std::size_t>(k)].add_term(rest, c);
        }
        return out;
    }

    // Substitutes a polynomial for a variable (non-negative powers only).
    CPoly substitute(const std::string &v, const CPoly &value) const
    {
        CPoly r;
        auto coeffs = coefficients_in(v);
        CPoly power(1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (k) power *= value;
            r += coeffs[k] * power;
        }
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[m, c] = *it;
            std::string cs = c.to_string();
            bool compound = !c.is_real() && sgn(c.re()) != 0;
            if (compound) cs = "(" + cs + ")";
            bool neg = !compound && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first) {
                if (neg) s += "-";
            } else {
                s += neg ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (const auto &[v, e] : m) {
                if (!mono.empty()) mono += "*";
                mono += v;
                if (e != 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty()) {
                s += cs;
            } else if (cs == "1") {
                s += mono;
            } else {
                s += cs + "*" + mono;
            }
        }
        return s;
    }

private:
    static Monomial multiply(const Monomial &a, const Monomial &b)
    {
        Monomial r = a;
        for (const auto &[v, e] : b) {
            int &x = r[v];
            x += e;
            if (x == 0) r.erase(v);
        }
        return r;
    }

    std::map<Monomial, GaussRational> terms_;
};

// f = (v - root) quotient + remainder, by synthetic division in v.
struct LinearDivision {
    CPoly quotient;
    CPoly remainder;
    bool exact() const { return remainder.is_zero(); }
};

inline LinearDivision divide_by_linear(const CPoly &f, const std::string &v, const CPoly &root)
{
    auto c = f.coefficients_in(v);
    LinearDivision d;
    CPoly carry;
    for (std::size_t k = c.size(); k-- > 0;) {
        CPoly next = c[k] + carry * root;
        if (k == 0) {
            d.remainder = next;
        } else {
            d.quotient += next * CPoly::var(v, static_cast<int>(k) - 1);
            carry = next;
        }
    }
    return d;
}

// Unreduced quotient num/den; zero iff the numerator is the zero polynomial.
class RatFunc
{
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(CPoly num) : num_(std::move(num)), den_(1) {}
    RatFunc(CPoly num, CPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) den_ = CPoly(1);
    }

    const CPoly &num() const { return num_; }
    const CPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b)
    {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }

    friend RatFunc operator-(const RatFunc &a) { return {-a.num_, a.den_}; }
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc &a, const RatFunc &b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.num_ * b.num_, a.den_ * b.den_};
    }

    friend RatFunc operator/(const RatFunc &a, const RatFunc &b)
    {
        if (b.is_zero()) throw std::domain_error("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }

    // Cross-multiplied comparison.
    friend bool operator==(const RatFunc &a, const RatFunc &b) { return a.num_ * b.den_ == b.num_ * a.den_; }

    RatFunc substitute(const std::string &v, const CPoly &value) const
    {
        return {num_.substitute(v, value), den_.substitute(v, value)};
    }

    std::string to_string() const
    {
        if (den_ == CPoly(1)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    CPoly num_;
    CPoly den_;
};

// Square matrix of rational functions (2x2 or its tensor square).
class RationalMatrix
{
public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t n) : n_(n), e_(n * n) {}

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = RatFunc(1);
        return m;
    }

    // P = sum e_ij (x) e_ji on C^d (x) C^d.
    static RationalMatrix permutation(std::size_t d = 2)
    {
        RationalMatrix p(d * d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) p(i * d + j, j * d + i) = RatFunc(1);
        }
        return p;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<RatFunc>> &rows)
    {
        RationalMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw std::invalid_argument("RationalMatrix rows must be square");
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t size() const { return n_; }
    RatFunc &operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const RatFunc &operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    bool is_zero() const
    {
        for (const auto &x : e_) {
            if (!x.is_zero()) return false;
        }
        return true;
    }

    friend RationalMatrix operator+(const RationalMatrix &a, const RationalMatrix &b)
    {
        a.check(b);
        RationalMatrix r(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }

    friend RationalMatrix operator-(const RationalMatrix &a, const RationalMatrix &b)
    {
        a.check(b);
        RationalMatrix r(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
        return r;
    }

    friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b)
    {
        a.check(b);
        RationalMatrix r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t j = 0; j < a.n_; ++j) {
                RatFunc s;
                for (std::size_t k = 0; k < a.n_; ++k) {
                    if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                    s += a(i, k) * b(k, j);
                }
                r(i, j) = s;
            }
        }
        return r;
    }

    friend RationalMatrix operator*(const RatFunc &c, const RationalMatrix &a)
    {
        RationalMatrix r(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = c * a.e_[k];
        return r;
    }

    RationalMatrix map(const std::function<RatFunc(const RatFunc &)> &f) const
    {
        RationalMatrix r(n_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f(e_[k]);
        return r;
    }

    RationalMatrix substitute(const std::string &v, const CPoly &value) const
    {
        return map([&](const RatFunc &x) { return x.substitute(v, value); });
    }

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            if (i) s += ", ";
            s += "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ", ";
                s += (*this)(i, j).to_string();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check(const RationalMatrix &o) const
    {
        if (n_ != o.n_) throw std::invalid_argument("RationalMatrix size mismatch");
    }

    std::size_t n_ = 0;
    std::vector<RatFunc> e_;
};

// (A (x) B)_{(ik),(jl)} = A_ij B_kl.
inline RationalMatrix kron(const RationalMatrix &a, const RationalMatrix &b)
{
    std::size_t n = a.size(), m = b.size();
    RationalMatrix r(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < m; ++l) r(i * m + k, j * m + l) = a(i, j) * b(k, l);
            }
        }
    }
    return r;
}

// Commutative image of a scalar-mode polynomial, one variable per atom name.
inline CPoly to_cpoly(const NCPolynomial &p)
{
    CPoly r;
    for (const auto &[w, c] : p.terms()) {
        Monomial m;
        for (const auto &a : w) ++m[a.to_string()];
        r.add_term(m, c);
    }
    return r;
}

} // namespace laxforge::boundary

#endif
