#ifndef LAXFORGE_NCPOLY_EULER_HPP
#define LAXFORGE_NCPOLY_EULER_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/ncpoly/polynomial.hpp>

namespace laxforge
{

// Variational calculus with respect to t. Dependent variables are atoms with
// their t-order stripped; x-derivative atoms count as separate variables.

namespace detail
{

inline void require_euler_domain(const NCPolynomial &p)
{
    if (p.mode() == Mode::matrix && !p.is_trace()) {
        throw std::invalid_argument("total-derivative test in matrix mode requires a formal trace");
    }
}

inline int field_degree(const Word &w)
{
    int d = 0;
    for (const auto &a : w) {
        if (!is_parameter(a.base)) ++d;
    }
    return d;
}

// For the occurrence w[k], the cofactor c with p = tr(w[k] c) (trace) or
// w[k] * c (scalar). Returned as a plain polynomial.
inline NCPolynomial cofactor(const NCPolynomial &p, const Word &w, std::size_t k)
{
    Mode mode = p.mode();
    Word rest;
    if (mode == Mode::scalar) {
        rest = w;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        if (rest.empty()) return NCPolynomial::constant(mode, scalar_shape, 1);
        return NCPolynomial::from_word(mode, rest);
    }
    rest.insert(rest.end(), w.begin() + static_cast<std::ptrdiff_t>(k + 1), w.end());
    rest.insert(rest.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    Shape s = base_shape(w[k].base, mode);
    if (rest.empty()) return NCPolynomial::constant(mode, {s.cols, s.rows}, 1);
    return NCPolynomial::from_word(mode, rest);
}

// Wraps a product atom * q back into the polynomial's kind.
inline NCPolynomial close_product(const NCPolynomial &like, const FieldAtom &a, const NCPolynomial &q)
{
    NCPolynomial prod = NCPolynomial::from_atom(like.mode(), a) * q;
    return like.is_trace() ? prod.trace() : prod;
}

} // namespace detail

// Dependent variables occurring in p.
inline std::vector<FieldAtom> dependent_variables(const NCPolynomial &p)
{
    std::vector<FieldAtom> vars;
    for (const auto &a : p.atoms()) {
        if (is_parameter(a.base)) continue;
        auto v = a.dependent_variable();
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    return vars;
}

// Variational derivative sum_k (-D_t)^k dp/dv^(k). In trace mode the result is
// the block polynomial q with delta tr(p) = tr(delta v * q).
inline NCPolynomial euler_derivative(const NCPolynomial &p, const FieldAtom &variable)
{
    detail::require_euler_domain(p);
    FieldAtom var = variable.dependent_variable();
    Shape s = base_shape(var.base, p.mode());
    NCPolynomial result(p.mode(), {s.cols, s.rows});
    std::map<int, NCPolynomial> partials;
    for (const auto &[w, c] : p.terms()) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k].dependent_variable() != var) continue;
            auto [it, ins] = partials.try_emplace(w[k].dt, p.mode(), Shape{s.cols, s.rows});
            it->second += detail::cofactor(p, w, k) * c;
        }
    }
    for (const auto &[order, partial] : partials) {
        NCPolynomial term = partial.differentiate_t(order);
        if (order % 2) term *= GaussRational(-1);
        result += term;
    }
    return result;
}

struct TotalDerivativeResult {
    bool is_total = false;
    std::optional<NCPolynomial> antiderivative;
    // Nonvanishing variational derivatives (empty when is_total).
    std::vector<std::pair<FieldAtom, NCPolynomial>> obstructions;
    std::string reason;
};

// Homotopy antiderivative of an exact p: each degree-d term contributes
// (1/d) sum over occurrences of v^(i), i >= 1, of sum_{k<i} v^(k) (-D_t)^(i-k-1) cofactor.
inline NCPolynomial homotopy_antiderivative(const NCPolynomial &p)
{
    detail::require_euler_domain(p);
    NCPolynomial f(p.mode(), p.shape(), p.kind());
    for (const auto &[w, c] : p.terms()) {
        int d = detail::field_degree(w);
        if (d == 0) throw std::invalid_argument("constant term has no differential-polynomial antiderivative");
        GaussRational weight = c * GaussRational(make_rational(1, d));
        for (std::size_t k = 0; k < w.size(); ++k) {
            int order = w[k].dt;
            if (order == 0 || is_parameter(w[k].base)) continue;
            NCPolynomial co = detail::cofactor(p, w, k);
            for (int j = 0; j < order; ++j) {
                NCPolynomial inner = co.differentiate_t(order - j - 1);
                if ((order - j - 1) % 2) inner *= GaussRational(-1);
                FieldAtom lower = w[k];
                lower.dt = static_cast<std::uint8_t>(j);
                f += detail::close_product(p, lower, inner) * weight;
            }
        }
    }
    return f;
}

// True iff every variational derivative vanishes; then also returns F with D_t F = p.
inline TotalDerivativeResult is_total_t_derivative(const NCPolynomial &p)
{
    detail::require_euler_domain(p);
    TotalDerivativeResult res;
    for (const auto &v : dependent_variables(p)) {
        NCPolynomial e = euler_derivative(p, v);
        if (!e.is_zero()) res.obstructions.emplace_back(v, std::move(e));
    }
    if (!res.obstructions.empty()) {
        res.reason = "variational derivative with respect to " + res.obstructions.front().first.to_string()
                     + " is " + res.obstructions.front().second.to_string();
        return res;
    }
    for (const auto &[w, c] : p.terms()) {
        if (detail::field_degree(w) == 0) {
            res.reason = "field-independent term " + c.to_string() + " is not a total derivative";
            return res;
        }
    }
    NCPolynomial f = homotopy_antiderivative(p);
    if (f.differentiate_t() != p) {
        throw std::logic_error("homotopy antiderivative failed to reproduce an exact density");
    }
    res.is_total = true;
    res.antiderivative = std::move(f);
    return res;
}

} // namespace laxforge

#endif
