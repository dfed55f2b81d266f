#ifndef LAXFORGE_MODEL_HPP
#define LAXFORGE_MODEL_HPP

#include <laxforge/ncpoly/laurent.hpp>

// Lax data of the time-like NLS model. Block layout is (N, M): u and pih are
// MxN, uh and pi are NxM; scalar mode takes N = M = 1.

namespace laxforge::model
{

inline NCPolynomial field(Mode mode, Base b, int dt = 0)
{
    return NCPolynomial::from_atom(mode, atom(b, dt));
}

inline NCPolynomial zero_block(Mode mode, Dim r, Dim c)
{
    return NCPolynomial(mode, {r, c});
}

inline NCPolynomial identity_block(Mode mode, Dim d, const GaussRational &c = 1)
{
    return NCPolynomial::constant(mode, {d, d}, c);
}

inline PolyMatrix diag(Mode mode, NCPolynomial a, NCPolynomial d)
{
    return PolyMatrix::from_blocks(mode, std::move(a), zero_block(mode, Dim::N, Dim::M), zero_block(mode, Dim::M, Dim::N),
                                   std::move(d));
}

inline PolyMatrix antidiag(Mode mode, NCPolynomial b, NCPolynomial c)
{
    return PolyMatrix::from_blocks(mode, zero_block(mode, Dim::N, Dim::N), std::move(b), std::move(c),
                                   zero_block(mode, Dim::M, Dim::M));
}

// Sigma = diag(I, -I).
inline PolyMatrix sigma(Mode mode)
{
    return PolyMatrix::constant_diagonal(mode, {1, -1});
}

// D = diag(1, 0).
inline PolyMatrix projector_d(Mode mode)
{
    return PolyMatrix::constant_diagonal(mode, {1, 0});
}

// V = lam^2 V2 + lam V1 + V0, split into diagonal and anti-diagonal parts:
// V_D = lam^2 Sigma/2 + diag(-uh u, u uh), V_A = lam antidiag(uh, u) + antidiag(pi, -pih).
struct VParts {
    PolyMatrix d2; // Sigma / 2
    PolyMatrix d0;
    PolyMatrix a1;
    PolyMatrix a0;
};

inline VParts v_parts(Mode mode)
{
    auto u = field(mode, Base::u);
    auto uh = field(mode, Base::uh);
    auto pi = field(mode, Base::pi);
    auto pih = field(mode, Base::pih);
    return {sigma(mode) * GaussRational(make_rational(1, 2)), diag(mode, -(uh * u), u * uh), antidiag(mode, uh, u),
            antidiag(mode, pi, -pih)};
}

inline MatrixSeries v_diagonal(Mode mode)
{
    auto p = v_parts(mode);
    return MatrixSeries::monomial(p.d2, 2) + MatrixSeries::monomial(p.d0, 0);
}

inline MatrixSeries v_antidiagonal(Mode mode)
{
    auto p = v_parts(mode);
    return MatrixSeries::monomial(p.a1, 1) + MatrixSeries::monomial(p.a0, 0);
}

inline MatrixSeries lax_v(Mode mode)
{
    return v_diagonal(mode) + v_antidiagonal(mode);
}

inline MatrixSeries differentiate_t(const MatrixSeries &s)
{
    return s.map([](const PolyMatrix &m) { return m.differentiate_t(); });
}

inline MatrixSeries differentiate_x(const MatrixSeries &s, int flow)
{
    return s.map([flow](const PolyMatrix &m) { return m.differentiate_x(flow); });
}

inline MatrixSeries commutator(const MatrixSeries &a, const MatrixSeries &b)
{
    return a * b - b * a;
}

} // namespace laxforge::model

#endif
