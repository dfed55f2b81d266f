#ifndef LAXFORGE_ORACLE_EVAL_HPP
#define LAXFORGE_ORACLE_EVAL_HPP

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include <laxforge/ncpoly/poly_matrix.hpp>
#include <laxforge/ncpoly/substitute.hpp>
#include <laxforge/oracle/sample.hpp>

namespace laxforge::oracle
{

// Evaluation with x_n-derivative atoms supplied by equation-of-motion rules.
class RuleSource : public FieldSource
{
public:
    RuleSource(const FieldSource &base, RuleSet rules) : base_(base), rules_(std::move(rules)) {}

    std::size_t dim(Dim d) const override { return base_.dim(d); }
    CMatrix atom(const FieldAtom &a, double t, double x) const override;
    std::string describe() const override { return base_.describe() + " with rules"; }

private:
    const FieldSource &base_;
    RuleSet rules_;
};

enum class Direction { t, x };

namespace detail
{

class Evaluator
{
public:
    Evaluator(const FieldSource &src, double t, double x) : src_(src), t_(t), x_(x) {}

    const CMatrix &atom(const FieldAtom &a)
    {
        auto it = cache_.find(a);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(a, src_.atom(a, t_, x_)).first->second;
    }

    CMatrix word(const Word &w, std::optional<std::size_t> replace = std::nullopt, Direction dir = Direction::t)
    {
        CMatrix r = value_at(w, 0, replace, dir);
        for (std::size_t k = 1; k < w.size(); ++k) r = r * value_at(w, k, replace, dir);
        return r;
    }

    CMatrix poly(const NCPolynomial &p, std::optional<Direction> derivative = std::nullopt)
    {
        std::size_t rows = p.is_trace() ? 1 : src_.dim(p.shape().rows);
        std::size_t cols = p.is_trace() ? 1 : src_.dim(p.shape().cols);
        CMatrix out(rows, cols);
        for (const auto &[w, c] : p.terms()) {
            cplx cc = c.to_complex();
            if (w.empty()) {
                if (p.is_trace()) throw UnhousedAtomError("constant inside a formal trace has no fixed dimension");
                if (!derivative) out += CMatrix::identity(rows, cc);
                continue;
            }
            if (!derivative) {
                add(out, word(w), cc, p.is_trace());
                continue;
            }
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (is_parameter(w[k].base)) continue;
                add(out, word(w, k, *derivative), cc, p.is_trace());
            }
        }
        return out;
    }

private:
    CMatrix value_at(const Word &w, std::size_t k, std::optional<std::size_t> replace, Direction dir)
    {
        if (replace && *replace == k) {
            return atom(dir == Direction::t ? w[k].t_derivative() : w[k].x_derivative(2));
        }
        return atom(w[k]);
    }

    static void add(CMatrix &out, const CMatrix &v, cplx c, bool trace)
    {
        if (trace) {
            out.a[0] += c * v.trace();
        } else {
            out += v * c;
        }
    }

    const FieldSource &src_;
    double t_, x_;
    std::map<FieldAtom, CMatrix> cache_;
};

} // namespace detail

inline CMatrix eval(const NCPolynomial &p, const FieldSource &src, double t, double x)
{
    detail::Evaluator e(src, t, x);
    return e.poly(p);
}

// Numeric Leibniz rule: sum over atoms of the word with that atom differentiated.
inline CMatrix eval_derivative(const NCPolynomial &p, const FieldSource &src, double t, double x,
                               Direction dir = Direction::t)
{
    detail::Evaluator e(src, t, x);
    return e.poly(p, dir);
}

namespace detail
{

inline CMatrix eval_blocks(const PolyMatrix &m, const FieldSource &src, double t, double x,
                           std::optional<Direction> derivative)
{
    Evaluator e(src, t, x);
    std::vector<std::size_t> rofs{0}, cofs{0};
    for (auto d : m.row_dims()) rofs.push_back(rofs.back() + src.dim(d));
    for (auto d : m.col_dims()) cofs.push_back(cofs.back() + src.dim(d));
    CMatrix out(rofs.back(), cofs.back());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            CMatrix b = e.poly(m(i, j), derivative);
            for (std::size_t r = 0; r < b.rows; ++r) {
                for (std::size_t c = 0; c < b.cols; ++c) out(rofs[i] + r, cofs[j] + c) = b(r, c);
            }
        }
    }
    return out;
}

} // namespace detail

inline CMatrix eval(const PolyMatrix &m, const FieldSource &src, double t, double x)
{
    return detail::eval_blocks(m, src, t, x, std::nullopt);
}

inline CMatrix eval_derivative(const PolyMatrix &m, const FieldSource &src, double t, double x,
                               Direction dir = Direction::t)
{
    return detail::eval_blocks(m, src, t, x, dir);
}

inline CMatrix RuleSource::atom(const FieldAtom &a, double t, double x) const
{
    if (a.dx > 0) {
        for (const auto &r : rules_) {
            if (r.pattern.size() != 1) continue;
            const FieldAtom &p = r.pattern[0];
            if (p.base != a.base || p.flow != a.flow || p.dx > a.dx || p.dt > a.dt) continue;
            NCPolynomial v = r.replacement.differentiate_t(a.dt - p.dt);
            for (int k = p.dx; k < a.dx; ++k) v = v.differentiate_x(a.flow);
            return eval(v, *this, t, x);
        }
    }
    return base_.atom(a, t, x);
}

struct FiniteDifferenceReport {
    int order = 1;
    double h = 0;
    cplx analytic, fd, fd_half;
    double error = 0, error_half = 0;
    double relative_error = 0;
    // error(h) / error(h/2); 4 for a second-order scheme. NaN when both vanish.
    double ratio = 0;
};

// Central differences in t of a scalar (1x1) expression against exact derivatives.
inline FiniteDifferenceReport finite_difference_crosscheck(const NCPolynomial &expr, const FieldSource &src, double t,
                                                           double x, double h, int order = 1)
{
    if (h < 1e-6 || h > 1e-3) throw std::invalid_argument("finite-difference step must lie in [1e-6, 1e-3]");
    if (order != 1 && order != 2) throw std::invalid_argument("finite-difference order must be 1 or 2");
    auto f = [&](double tt) {
        CMatrix v = eval(expr, src, tt, x);
        if (v.rows != 1 || v.cols != 1) throw std::invalid_argument("finite-difference check needs a scalar expression");
        return v.a[0];
    };
    auto central = [&](double step) {
        if (order == 1) return (f(t + step) - f(t - step)) / (2 * step);
        return (f(t + step) - 2.0 * f(t) + f(t - step)) / (step * step);
    };
    FiniteDifferenceReport r;
    r.order = order;
    r.h = h;
    r.analytic = eval(expr.differentiate_t(order), src, t, x).a[0];
    r.fd = central(h);
    r.fd_half = central(h / 2);
    r.error = std::abs(r.fd - r.analytic);
    r.error_half = std::abs(r.fd_half - r.analytic);
    double scale = std::abs(r.analytic);
    r.relative_error = scale > 0 ? r.error / scale : r.error;
    r.ratio = r.error_half > 0 ? r.error / r.error_half : (r.error > 0 ? INFINITY : NAN);
    return r;
}

} // namespace laxforge::oracle

#endif
