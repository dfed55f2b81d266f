#ifndef LAXFORGE_RICCATI_HPP
#define LAXFORGE_RICCATI_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/model.hpp>

namespace laxforge
{

// W = sum_{n>=1} W^(n) lam^-n (anti-diagonal) solving
//   d_t W + [W, V_D] + W V_A W - V_A = 0,
// and the densities of Z = sum Z^(n) lam^-n from d_t Z = V_D + V_A W.
struct RiccatiSolution {
    Mode mode = Mode::scalar;
    int order = 0;
    std::vector<PolyMatrix> w; // w[n-1] = W^(n), n = 1..order
    std::vector<PolyMatrix> z; // z[n-1] = density of Z^(n), n = 1..order-1
    // Density of the lam^2 term of Z: Sigma/2, integrating to diag(tau, -tau).
    PolyMatrix z_leading;

    const PolyMatrix &W(int n) const { return w.at(static_cast<std::size_t>(n - 1)); }
    const PolyMatrix &Z(int n) const { return z.at(static_cast<std::size_t>(n - 1)); }

    // W as a series known through lam^-order.
    MatrixSeries w_series() const
    {
        MatrixSeries s(PolyMatrix::zero(mode), order);
        for (int n = 1; n <= order; ++n) s.set(-n, W(n));
        return s;
    }
};

namespace detail
{

inline PolyMatrix w_coeff(const std::vector<PolyMatrix> &w, int n, Mode mode)
{
    if (n < 1 || n > static_cast<int>(w.size())) return PolyMatrix::zero(mode);
    return w[static_cast<std::size_t>(n - 1)];
}

} // namespace detail

// Coefficient of lam^-n in d_t W + [W, V_D] + W V_A W - V_A for the given
// W^(1..); missing coefficients count as zero.
inline PolyMatrix w_riccati_residual(const std::vector<PolyMatrix> &w, int n, Mode mode)
{
    auto v = model::v_parts(mode);
    auto W = [&](int k) { return detail::w_coeff(w, k, mode); };
    PolyMatrix r = W(n).differentiate_t();
    r += commutator(W(n + 2), v.d2) + commutator(W(n), v.d0);
    // W^(j) lam A1 W^(k): j + k = n + 1;  W^(j) A0 W^(k): j + k = n.
    for (int j = 1; j <= n; ++j) {
        if (n + 1 - j >= 1) r += W(j) * v.a1 * W(n + 1 - j);
        if (n - j >= 1) r += W(j) * v.a0 * W(n - j);
    }
    if (n == -1) r -= v.a1;
    if (n == 0) r -= v.a0;
    return r;
}

inline RiccatiSolution solve_w_z(int order, Mode mode)
{
    if (order < 1) throw std::invalid_argument("Riccati order must be at least 1");
    RiccatiSolution sol;
    sol.mode = mode;
    sol.order = order;
    auto v = model::v_parts(mode);
    sol.z_leading = v.d2;
    // The lam^2 part of [W, V_D] at order lam^-n is antidiag(-W12, W21) of W^(n+2).
    for (int n = -1; n + 2 <= order; ++n) {
        PolyMatrix e = w_riccati_residual(sol.w, n, mode);
        if (!e.is_off_diagonal()) {
            throw std::logic_error("diagonal Riccati residual at order " + std::to_string(n) + ": " + e.to_string());
        }
        sol.w.push_back(model::antidiag(mode, e(0, 1), -e(1, 0)));
    }
    for (int n = 1; n <= order - 1; ++n) {
        PolyMatrix zn = v.a1 * sol.W(n + 1) + v.a0 * sol.W(n);
        if (!zn.is_diagonal()) throw std::logic_error("off-diagonal Z density at order " + std::to_string(n));
        sol.z.push_back(std::move(zn));
    }
    return sol;
}

// True when every residual coefficient lam^-n, n <= order - 2, vanishes.
inline bool verify_w_residual(const RiccatiSolution &sol)
{
    for (int n = -1; n <= sol.order - 2; ++n) {
        if (!w_riccati_residual(sol.w, n, sol.mode).is_zero()) return false;
    }
    return true;
}

enum class GammaKind { gamma, hat_gamma };

// Single-block Riccati equation
//   d_t X = lam c1 + c0 + (a0 + s lam^2/2) X + X (b0 + s lam^2/2) + X (q0 + lam q1) X.
struct BlockRiccati {
    NCPolynomial c1, c0, a0, b0, q0, q1;
    int s = 1;
};

// Gamma = Psi2 Psi1^-1 (MxN) and hat Gamma = Psi1 Psi2^-1 (NxM).
inline BlockRiccati gamma_equation(GammaKind which, Mode mode)
{
    auto u = model::field(mode, Base::u);
    auto uh = model::field(mode, Base::uh);
    auto pi = model::field(mode, Base::pi);
    auto pih = model::field(mode, Base::pih);
    if (which == GammaKind::gamma) return {u, -pih, u * uh, uh * u, -pi, -uh, -1};
    return {uh, pi, -(uh * u), -(u * uh), pih, -u, 1};
}

struct GammaSolution {
    GammaKind which = GammaKind::gamma;
    Mode mode = Mode::matrix;
    int order = 0;
    std::vector<NCPolynomial> coeffs; // coeffs[k-1] = Gamma^(k)

    const NCPolynomial &operator[](int k) const { return coeffs.at(static_cast<std::size_t>(k - 1)); }
};

// Coefficient of lam^-n in -d_t X + (right-hand side).
inline NCPolynomial block_riccati_residual(const BlockRiccati &eq, const std::vector<NCPolynomial> &x, int n,
                                           Shape shape, Mode mode)
{
    auto X = [&](int k) {
        if (k < 1 || k > static_cast<int>(x.size())) return NCPolynomial(mode, shape);
        return x[static_cast<std::size_t>(k - 1)];
    };
    NCPolynomial r = -X(n).differentiate_t();
    if (n == -1) r += eq.c1;
    if (n == 0) r += eq.c0;
    r += eq.a0 * X(n) + X(n) * eq.b0 + X(n + 2) * GaussRational(eq.s);
    for (int j = 1; j <= n; ++j) {
        if (n - j >= 1) r += X(j) * eq.q0 * X(n - j);
        if (n + 1 - j >= 1) r += X(j) * eq.q1 * X(n + 1 - j);
    }
    return r;
}

inline GammaSolution solve_gamma(int order, GammaKind which, Mode mode = Mode::matrix)
{
    if (order < 1) throw std::invalid_argument("Riccati order must be at least 1");
    BlockRiccati eq = gamma_equation(which, mode);
    Shape shape = eq.c1.shape();
    GammaSolution sol{which, mode, order, {}};
    for (int n = -1; n + 2 <= order; ++n) {
        NCPolynomial e = block_riccati_residual(eq, sol.coeffs, n, shape, mode);
        sol.coeffs.push_back(e * GaussRational(-eq.s));
    }
    return sol;
}

inline bool verify_gamma_residual(const GammaSolution &sol)
{
    BlockRiccati eq = gamma_equation(sol.which, sol.mode);
    for (int n = -1; n <= sol.order - 2; ++n) {
        if (!block_riccati_residual(eq, sol.coeffs, n, eq.c1.shape(), sol.mode).is_zero()) return false;
    }
    return true;
}

} // namespace laxforge

#endif
