#ifndef LAXFORGE_NCPOLY_LATEX_HPP
#define LAXFORGE_NCPOLY_LATEX_HPP

#include <cstddef>
#include <string>

#include <laxforge/ncpoly/laurent.hpp>

namespace laxforge
{

namespace detail
{

inline std::string latex_symbol(Base b)
{
    switch (b) {
    case Base::u: return "u";
    case Base::uh: return "\\hat{u}";
    case Base::pi: return "\\pi";
    case Base::pih: return "\\hat{\\pi}";
    case Base::K11: return "K_{11}";
    case Base::K22: return "K_{22}";
    case Base::xi_plus: return "\\xi^{+}";
    case Base::xi_minus: return "\\xi^{-}";
    case Base::kinv_plus: return "(\\kappa^{+})^{-1}";
    case Base::kinv_minus: return "(\\kappa^{-})^{-1}";
    }
    return "?";
}

inline std::string latex_atom(const FieldAtom &a)
{
    std::string s = latex_symbol(a.base);
    if (a.dx > 0 && a.flow != 2) {
        std::string op = "\\partial_{x_{" + std::to_string(a.flow) + "}}";
        if (a.dx > 1) op += "^{" + std::to_string(a.dx) + "}";
        s = op + " " + s;
    }
    std::string sub;
    if (a.flow == 2) sub.append(a.dx, 'x');
    sub.append(a.dt, 't');
    if (!sub.empty()) s += "_{" + sub + "}";
    return s;
}

inline std::string latex_rational(const Rational &q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

// Magnitude of a coefficient with the sign pulled out when it is real or imaginary.
inline std::string latex_coefficient(const GaussRational &c, bool &negative)
{
    negative = false;
    if (c.is_real()) {
        negative = sgn(c.re()) < 0;
        Rational m = abs(c.re());
        return m == 1 ? "" : latex_rational(m);
    }
    if (sgn(c.re()) == 0) {
        negative = sgn(c.im()) < 0;
        Rational m = abs(c.im());
        return (m == 1 ? "" : latex_rational(m)) + "i";
    }
    std::string im = latex_rational(abs(c.im()));
    return "(" + latex_rational(c.re()) + (sgn(c.im()) < 0 ? " - " : " + ") + (abs(c.im()) == 1 ? "" : im) + "i)";
}

inline std::string latex_word(const Word &w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size();) {
        std::size_t run = 1;
        while (k + run < w.size() && w[k + run] == w[k]) ++run;
        std::string a = latex_atom(w[k]);
        if (run > 1) {
            if (a.find('_') != std::string::npos || a.find(' ') != std::string::npos) a = "(" + a + ")";
            a += "^{" + std::to_string(run) + "}";
        }
        if (!s.empty()) s += " ";
        s += a;
        k += run;
    }
    return s;
}

} // namespace detail

inline std::string to_latex(const NCPolynomial &p)
{
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto &[w, c] : p.terms()) {
        bool negative = false;
        std::string coeff = detail::latex_coefficient(c, negative);
        if (first) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        if (w.empty() && coeff.empty()) coeff = "1";
        if (w.empty() && coeff == "i") coeff = "i";
        s += coeff;
        if (!w.empty()) {
            if (!coeff.empty()) s += " ";
            s += detail::latex_word(w);
        }
        first = false;
    }
    if (p.is_trace()) return "\\operatorname{tr}\\left(" + s + "\\right)";
    return s;
}

inline std::string to_latex(const ScalarSeries &s)
{
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = s.coefficients().rbegin(); it != s.coefficients().rend(); ++it) {
        const auto &[k, c] = *it;
        std::string lam = k == 0 ? "" : (k == 1 ? "\\lambda" : "\\lambda^{" + std::to_string(k) + "}");
        std::string piece;
        if (lam.empty()) {
            piece = to_latex(c);
        } else if (c.size() == 1 && c.terms().begin()->first.empty()) {
            bool negative = false;
            std::string coeff = detail::latex_coefficient(c.terms().begin()->second, negative);
            piece = (negative ? "-" : "") + (coeff.empty() ? "" : coeff + " ") + lam;
        } else if (c.size() == 1 && !c.is_trace()) {
            const auto &[w, cw] = *c.terms().begin();
            bool negative = false;
            std::string coeff = detail::latex_coefficient(cw, negative);
            piece = (negative ? "-" : "") + (coeff.empty() ? "" : coeff + " ") + lam + " " + detail::latex_word(w);
        } else {
            piece = lam + "\\left(" + to_latex(c) + "\\right)";
        }
        if (first) {
            out = piece;
        } else if (piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
        first = false;
    }
    if (auto t = s.truncation()) out += " + O(\\lambda^{" + std::to_string(-*t - 1) + "})";
    return out;
}

inline std::string to_latex(const PolyMatrix &m)
{
    std::string s = "\\begin{pmatrix}";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += " \\\\ ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += " & ";
            s += to_latex(m(i, j));
        }
    }
    return s + "\\end{pmatrix}";
}

// Block matrix whose entries are polynomials in lambda.
inline std::string to_latex(const MatrixSeries &s)
{
    if (s.is_zero()) return "0";
    const PolyMatrix &z = s.zero_coefficient();
    std::string out = "\\begin{pmatrix}";
    for (std::size_t i = 0; i < z.rows(); ++i) {
        if (i) out += " \\\\ ";
        for (std::size_t j = 0; j < z.cols(); ++j) {
            if (j) out += " & ";
            ScalarSeries entry(z(i, j), s.truncation());
            for (const auto &[k, c] : s.coefficients()) entry.set(k, c(i, j));
            out += to_latex(entry);
        }
    }
    return out + "\\end{pmatrix}";
}

} // namespace laxforge

#endif
