#ifndef LAXFORGE_NCPOLY_LAURENT_HPP
#define LAXFORGE_NCPOLY_LAURENT_HPP

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <laxforge/ncpoly/poly_matrix.hpp>

namespace laxforge
{

class TruncationError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

// Finitely supported series sum_k c_k lambda^k with coefficients of type T
// (NCPolynomial or PolyMatrix). Coefficients of powers below valid_min() are
// unknown: they were discarded by truncation and may not be read.
template <typename T>
class LaurentSeries
{
public:
    static constexpr int exact = INT_MIN / 4;

    LaurentSeries() = default;

    // `zero` fixes the coefficient layout; the series starts out exact.
    explicit LaurentSeries(T zero, std::optional<int> truncation = std::nullopt)
        : zero_(std::move(zero)), valid_min_(truncation ? -*truncation : exact)
    {
    }

    static LaurentSeries monomial(T c, int power)
    {
        LaurentSeries s(c * GaussRational(0));
        s.set(power, std::move(c));
        return s;
    }

    const T &zero_coefficient() const { return zero_; }

    bool is_exact() const { return valid_min_ == exact; }

    // Orders below lambda^(-truncation) are unknown; nullopt for exact series.
    std::optional<int> truncation() const
    {
        if (is_exact()) return std::nullopt;
        return -valid_min_;
    }

    int valid_min() const { return valid_min_; }

    void truncate(int truncation)
    {
        valid_min_ = std::max(valid_min_, -truncation);
        drop_below_valid();
    }

    const std::map<int, T> &coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    // Highest power with a nonzero coefficient.
    std::optional<int> leading_power() const
    {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.rbegin()->first;
    }

    std::optional<int> lowest_power() const
    {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.begin()->first;
    }

    T coeff(int power) const
    {
        if (power < valid_min_) {
            throw TruncationError("coefficient of lambda^" + std::to_string(power)
                                  + " lies beyond the series truncation lambda^" + std::to_string(valid_min_));
        }
        auto it = coeffs_.find(power);
        return it == coeffs_.end() ? zero_ : it->second;
    }

    // Coefficient of lambda^(-n), the convention of 1/lambda expansions.
    T operator[](int n) const { return coeff(-n); }

    void set(int power, T value)
    {
        if (power < valid_min_) return;
        if (value.is_zero()) {
            coeffs_.erase(power);
        } else {
            coeffs_[power] = std::move(value);
        }
    }

    void add(int power, const T &value)
    {
        if (power < valid_min_ || value.is_zero()) return;
        auto it = coeffs_.find(power);
        if (it == coeffs_.end()) {
            coeffs_.emplace(power, value);
        } else {
            it->second += value;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    LaurentSeries &operator+=(const LaurentSeries &o)
    {
        valid_min_ = std::max(valid_min_, o.valid_min_);
        drop_below_valid();
        for (const auto &[k, c] : o.coeffs_) add(k, c);
        return *this;
    }

    LaurentSeries &operator-=(const LaurentSeries &o)
    {
        valid_min_ = std::max(valid_min_, o.valid_min_);
        drop_below_valid();
        for (const auto &[k, c] : o.coeffs_) add(k, c * GaussRational(-1));
        return *this;
    }

    LaurentSeries &operator*=(const GaussRational &c)
    {
        if (c.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto &[k, v] : coeffs_) v *= c;
        return *this;
    }

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
    friend LaurentSeries operator*(LaurentSeries a, const GaussRational &c) { return a *= c; }
    friend LaurentSeries operator*(const GaussRational &c, LaurentSeries a) { return a *= c; }
    friend LaurentSeries operator-(LaurentSeries a) { return a *= GaussRational(-1); }

    // Product; the result is known down to the weakest power either operand
    // can guarantee once multiplied by the other's leading term.
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
    {
        LaurentSeries r(a.zero_ * b.zero_);
        r.valid_min_ = product_valid_min(a, b);
        for (const auto &[ka, ca] : a.coeffs_) {
            for (const auto &[kb, cb] : b.coeffs_) {
                if (ka + kb < r.valid_min_) continue;
                r.add(ka + kb, ca * cb);
            }
        }
        return r;
    }

    // Multiplication by lambda^k.
    LaurentSeries shifted(int k) const
    {
        LaurentSeries r(zero_);
        r.valid_min_ = is_exact() ? exact : valid_min_ + k;
        for (const auto &[p, c] : coeffs_) r.coeffs_.emplace(p + k, c);
        return r;
    }

    // f(lambda) -> f(-lambda).
    LaurentSeries reflected() const
    {
        LaurentSeries r = *this;
        for (auto &[p, c] : r.coeffs_) {
            if (p % 2 != 0) c *= GaussRational(-1);
        }
        return r;
    }

    template <typename F>
    auto map(F &&f) const -> LaurentSeries<decltype(f(std::declval<const T &>()))>
    {
        using U = decltype(f(std::declval<const T &>()));
        LaurentSeries<U> r(f(zero_), truncation());
        for (const auto &[p, c] : coeffs_) r.set(p, f(c));
        return r;
    }

    friend bool operator==(const LaurentSeries &a, const LaurentSeries &b)
    {
        return a.valid_min_ == b.valid_min_ && a.coeffs_ == b.coeffs_;
    }

    // Equality of the coefficients both series know.
    bool agrees_with(const LaurentSeries &o) const
    {
        int lo = std::max(valid_min_, o.valid_min_);
        for (const auto &[p, c] : coeffs_) {
            if (p >= lo && o.coeff(p) != c) return false;
        }
        for (const auto &[p, c] : o.coeffs_) {
            if (p >= lo && coeff(p) != c) return false;
        }
        return true;
    }

private:
    template <typename>
    friend class LaurentSeries;

    static int product_valid_min(const LaurentSeries &a, const LaurentSeries &b)
    {
        if (a.is_exact() && b.is_exact()) return exact;
        if (a.coeffs_.empty() && a.is_exact()) return exact;
        if (b.coeffs_.empty() && b.is_exact()) return exact;
        int v = exact;
        if (!a.is_exact()) v = std::max(v, a.valid_min_ + (b.coeffs_.empty() ? 0 : b.coeffs_.rbegin()->first));
        if (!b.is_exact()) v = std::max(v, b.valid_min_ + (a.coeffs_.empty() ? 0 : a.coeffs_.rbegin()->first));
        return v;
    }

    void drop_below_valid()
    {
        coeffs_.erase(coeffs_.begin(), coeffs_.lower_bound(valid_min_));
    }

    T zero_{};
    std::map<int, T> coeffs_;
    int valid_min_ = exact;
};

using ScalarSeries = LaurentSeries<NCPolynomial>;
using MatrixSeries = LaurentSeries<PolyMatrix>;

class InvertibilityError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

namespace detail
{

inline std::optional<GaussRational> constant_multiple_of_identity(const NCPolynomial &p)
{
    if (!p.is_constant()) return std::nullopt;
    if (p.shape().rows != p.shape().cols) return std::nullopt;
    return p.constant_term();
}

inline std::optional<GaussRational> constant_multiple_of_identity(const PolyMatrix &m)
{
    return m.identity_multiple();
}

inline NCPolynomial unit_like(const NCPolynomial &zero)
{
    return NCPolynomial::constant(zero.mode(), zero.shape(), 1);
}

inline PolyMatrix unit_like(const PolyMatrix &zero)
{
    return PolyMatrix::identity(zero.mode(), zero.row_dims());
}

} // namespace detail

// Splits s = c lambda^k (1 + n) with n strictly negative in lambda.
template <typename T>
struct SeriesNormalForm {
    GaussRational lead;
    int power = 0;
    LaurentSeries<T> tail; // n
};

template <typename T>
SeriesNormalForm<T> normal_form(const LaurentSeries<T> &s)
{
    auto k = s.leading_power();
    if (!k) throw InvertibilityError("vanishing leading coefficient");
    auto c = detail::constant_multiple_of_identity(s.coeff(*k));
    if (!c || c->is_zero()) {
        throw InvertibilityError("leading coefficient is not an invertible constant multiple of the identity");
    }
    GaussRational inv = GaussRational(1) / *c;
    LaurentSeries<T> n = s.shifted(-*k) * inv;
    // The lambda^0 coefficient of s / (c lambda^k) is exactly the unit.
    n.set(0, n.zero_coefficient());
    return {*c, *k, std::move(n)};
}

// Geometric-series inverse. An exact input needs an explicit truncation.
template <typename T>
LaurentSeries<T> series_invert(const LaurentSeries<T> &s, std::optional<int> truncation = std::nullopt)
{
    auto nf = normal_form(s);
    // Known range of the inverse: lambda^(-k) (1 + n)^{-1} known as far as n is.
    int valid_min = LaurentSeries<T>::exact;
    if (!s.is_exact()) valid_min = s.valid_min() - 2 * nf.power;
    if (truncation) valid_min = std::max(valid_min, -*truncation);
    if (valid_min == LaurentSeries<T>::exact) {
        throw TruncationError("series_invert of an exact series needs a truncation order");
    }
    // Work relative to lambda^(-k): need (1+n)^{-1} down to valid_min + k.
    int inner_min = valid_min + nf.power;
    LaurentSeries<T> n = nf.tail;
    n.truncate(-inner_min);
    T one = detail::unit_like(s.zero_coefficient());
    LaurentSeries<T> result(s.zero_coefficient(), -inner_min);
    result.set(0, one);
    LaurentSeries<T> power(s.zero_coefficient(), -inner_min);
    power.set(0, one);
    LaurentSeries<T> minus_n = -n;
    for (int m = 1; m <= -inner_min + 1; ++m) {
        power = power * minus_n;
        power.truncate(-inner_min);
        if (power.is_zero()) break;
        result += power;
    }
    result = result.shifted(-nf.power) * (GaussRational(1) / nf.lead);
    result.truncate(-valid_min);
    return result;
}

struct LogPrefix {
    GaussRational lead;
    int power = 0;
};

template <typename T>
struct SeriesLog {
    LaurentSeries<T> value; // log(1 + n)
    LogPrefix prefix;       // log(c lambda^k), field independent
};

// Mercator series for the field-dependent part of log s.
template <typename T>
SeriesLog<T> series_log(const LaurentSeries<T> &s, std::optional<int> truncation = std::nullopt)
{
    auto nf = normal_form(s);
    int valid_min = s.is_exact() ? LaurentSeries<T>::exact : s.valid_min() - nf.power;
    if (truncation) valid_min = std::max(valid_min, -*truncation);
    if (valid_min == LaurentSeries<T>::exact) {
        throw TruncationError("series_log of an exact series needs a truncation order");
    }
    LaurentSeries<T> n = nf.tail;
    n.truncate(-valid_min);
    LaurentSeries<T> result(s.zero_coefficient(), -valid_min);
    LaurentSeries<T> power(s.zero_coefficient(), -valid_min);
    power.set(0, detail::unit_like(s.zero_coefficient()));
    for (int m = 1; m <= -valid_min + 1; ++m) {
        power = power * n;
        power.truncate(-valid_min);
        if (power.is_zero()) break;
        GaussRational w(make_rational(m % 2 ? 1 : -1, m));
        result += power * w;
    }
    return {std::move(result), {nf.lead, nf.power}};
}

} // namespace laxforge

#endif
