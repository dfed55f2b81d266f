#ifndef LAXFORGE_ORACLE_SAMPLE_HPP
#define LAXFORGE_ORACLE_SAMPLE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/ncpoly/atom.hpp>

namespace laxforge::oracle
{

using cplx = std::complex<double>;

class UnhousedAtomError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major.
struct CMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static CMatrix identity(std::size_t n, cplx c = 1.0)
    {
        CMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = c;
        return m;
    }

    static CMatrix scalar(cplx c)
    {
        CMatrix m(1, 1);
        m.a[0] = c;
        return m;
    }

    cplx &operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    CMatrix &operator+=(const CMatrix &o)
    {
        check(o);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
        return *this;
    }

    CMatrix &operator-=(const CMatrix &o)
    {
        check(o);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
        return *this;
    }

    CMatrix &operator*=(cplx c)
    {
        for (auto &x : a) x *= c;
        return *this;
    }

    friend CMatrix operator+(CMatrix x, const CMatrix &y) { return x += y; }
    friend CMatrix operator-(CMatrix x, const CMatrix &y) { return x -= y; }
    friend CMatrix operator*(CMatrix x, cplx c) { return x *= c; }

    friend CMatrix operator*(const CMatrix &x, const CMatrix &y)
    {
        if (x.cols != y.rows) throw std::invalid_argument("CMatrix product dimension mismatch");
        CMatrix r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i) {
            for (std::size_t k = 0; k < x.cols; ++k) {
                cplx v = x(i, k);
                if (v == cplx(0)) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
            }
        }
        return r;
    }

    cplx trace() const
    {
        if (rows != cols) throw std::invalid_argument("trace of a non-square matrix");
        cplx s = 0;
        for (std::size_t k = 0; k < rows; ++k) s += (*this)(k, k);
        return s;
    }

    double max_abs() const
    {
        double m = 0;
        for (const auto &x : a) m = std::max(m, std::abs(x));
        return m;
    }

private:
    void check(const CMatrix &o) const
    {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("CMatrix dimension mismatch");
    }
};

inline cplx ipow(cplx b, int n)
{
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= b;
    return r;
}

// sum_j a_j exp(i (omega_j t + k_j x)).
struct TrigPoly {
    struct Term {
        cplx amp;
        double omega = 0, k = 0;
    };
    std::vector<Term> terms;

    cplx eval(int dt, int dx, double t, double x) const
    {
        cplx s = 0;
        const cplx i(0, 1);
        for (const auto &m : terms) {
            cplx f = m.amp * std::exp(i * (m.omega * t + m.k * x));
            f *= ipow(i * m.omega, dt) * ipow(i * m.k, dx);
            s += f;
        }
        return s;
    }
};

// Evaluates atoms at a point. x is the flow-2 variable.
class FieldSource
{
public:
    virtual ~FieldSource() = default;
    virtual std::size_t dim(Dim d) const = 0;
    virtual CMatrix atom(const FieldAtom &a, double t, double x) const = 0;
    virtual std::string describe() const = 0;
};

// Random trigonometric fields; matrix mode gives every entry its own polynomial.
class FieldSample : public FieldSource
{
public:
    struct Options {
        Mode mode = Mode::scalar;
        std::size_t n = 2, m = 3;
        int modes = 4;
        double max_frequency = 1.5;
    };

    FieldSample(std::uint64_t seed, Options opt) : seed_(seed), opt_(opt)
    {
        if (opt.modes < 1 || opt.modes > 8) throw std::invalid_argument("a trig sample has 1..8 modes");
        if (opt_.mode == Mode::scalar) opt_.n = opt_.m = 1;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> freq(-opt_.max_frequency, opt_.max_frequency);
        for (Base b : {Base::u, Base::uh, Base::pi, Base::pih}) {
            Shape s = base_shape(b, opt_.mode);
            std::size_t count = dim(s.rows) * dim(s.cols);
            auto &entries = fields_[b];
            for (std::size_t e = 0; e < count; ++e) {
                TrigPoly p;
                for (int j = 0; j < opt_.modes; ++j) {
                    double r = unit(rng), phase = 2 * M_PI * unit(rng);
                    double w = freq(rng), k = freq(rng);
                    p.terms.push_back({std::polar(r, phase), w, k});
                }
                entries.push_back(std::move(p));
            }
        }
        for (Base b : {Base::xi_plus, Base::xi_minus, Base::kinv_plus, Base::kinv_minus}) {
            params_[b] = {0.5 + unit(rng), 0.0};
        }
    }

    std::uint64_t seed() const { return seed_; }
    Mode mode() const { return opt_.mode; }

    std::size_t dim(Dim d) const override
    {
        switch (d) {
        case Dim::one: return 1;
        case Dim::N: return opt_.n;
        case Dim::M: return opt_.m;
        }
        return 1;
    }

    CMatrix atom(const FieldAtom &a, double t, double x) const override
    {
        if (is_parameter(a.base)) return CMatrix::scalar(params_.at(a.base));
        if (is_kernel_block(a.base)) throw UnhousedAtomError("no evaluator for " + a.to_string());
        if (a.dx > 0 && a.flow != 2) throw UnhousedAtomError("no evaluator for flow " + std::to_string(a.flow));
        Shape s = base_shape(a.base, opt_.mode);
        CMatrix m(dim(s.rows), dim(s.cols));
        const auto &entries = fields_.at(a.base);
        for (std::size_t k = 0; k < entries.size(); ++k) m.a[k] = entries[k].eval(a.dt, a.dx, t, x);
        return m;
    }

    std::string describe() const override { return "trig sample seed " + std::to_string(seed_); }

private:
    std::uint64_t seed_;
    Options opt_;
    std::map<Base, std::vector<TrigPoly>> fields_;
    std::map<Base, cplx> params_;
};

// u = alpha e^(kx + omega t), uh = beta e^(-kx - omega t), omega = 2 alpha beta - k^2,
// pi = uh_x, pih = u_x. Solves u_t + u_xx - 2uh u^2 = 0 and -uh_t + uh_xx - 2u uh^2 = 0.
class ExponentialSolution : public FieldSource
{
public:
    ExponentialSolution(cplx alpha, cplx beta, cplx k) : alpha_(alpha), beta_(beta), k_(k) {}

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }
    cplx k() const { return k_; }
    cplx omega() const { return 2.0 * alpha_ * beta_ - k_ * k_; }

    std::size_t dim(Dim) const override { return 1; }

    CMatrix atom(const FieldAtom &a, double t, double x) const override
    {
        if (is_parameter(a.base) || is_kernel_block(a.base)) throw UnhousedAtomError("no evaluator for " + a.to_string());
        if (a.dx > 0 && a.flow != 2) throw UnhousedAtomError("no evaluator for flow " + std::to_string(a.flow));
        cplx w = omega();
        cplx e = std::exp(k_ * x + w * t);
        int dx = a.dx;
        switch (a.base) {
        case Base::pih: ++dx; [[fallthrough]];
        case Base::u: return CMatrix::scalar(alpha_ * e * ipow(w, a.dt) * ipow(k_, dx));
        case Base::pi: ++dx; [[fallthrough]];
        case Base::uh: return CMatrix::scalar(beta_ / e * ipow(-w, a.dt) * ipow(-k_, dx));
        default: break;
        }
        throw UnhousedAtomError("no evaluator for " + a.to_string());
    }

    std::string describe() const override
    {
        auto s = [](cplx c) { return "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")"; };
        return "exponential alpha=" + s(alpha_) + " beta=" + s(beta_) + " k=" + s(k_);
    }

private:
    cplx alpha_, beta_, k_;
};

} // namespace laxforge::oracle

#endif
