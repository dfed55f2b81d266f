#ifndef LAXFORGE_HIERARCHY_DRESSING_HPP
#define LAXFORGE_HIERARCHY_DRESSING_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/hierarchy/lax.hpp>
#include <laxforge/ncpoly/substitute.hpp>

namespace laxforge
{

class KEliminationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Dressing kernel K = [[K11, -uh], [u, K22]] with the block rewrites implied
// by Y = -X K and d_t K = Y K, X = [K, Sigma]/2. K11 and K22 stay opaque.
struct DressingKernel {
    PolyMatrix k;
    RuleSet rules;
};

namespace detail
{

inline NCPolynomial mx(Base b, int dt = 0)
{
    return NCPolynomial::from_atom(Mode::matrix, atom(b, dt));
}

} // namespace detail

// closure_order: highest t-derivative of a field for which a rule
// (d_t^j a) K_ii -> ... is derived from the base rules.
inline DressingKernel make_dressing_kernel(int closure_order = 2)
{
    using detail::mx;
    const auto u = mx(Base::u), uh = mx(Base::uh), pi = mx(Base::pi), pih = mx(Base::pih);
    const FieldAtom k11 = atom(Base::K11), k22 = atom(Base::K22);

    DressingKernel dk;
    dk.k = PolyMatrix::from_blocks(Mode::matrix, mx(Base::K11), -uh, u, mx(Base::K22));

    RuleSet time{Rule(k11.t_derivative(), pi * u - uh * pih), Rule(k22.t_derivative(), pih * uh - u * pi)};
    struct Pair {
        Base field;
        FieldAtom kernel;
        NCPolynomial replacement;
    };
    std::vector<Pair> base{{Base::u, k11, pih},
                           {Base::uh, k22, -pi},
                           {Base::pih, k11, u * uh * u - mx(Base::u, 1)},
                           {Base::pi, k22, -mx(Base::uh, 1) - uh * u * uh}};
    for (const auto &b : base) dk.rules.emplace_back(Word{atom(b.field), b.kernel}, b.replacement, false);
    // d_t (a K) = a_t K + a K_t, so a_t K -> (a K)_t - a K_t.
    for (int j = 1; j <= closure_order; ++j) {
        for (const auto &b : base) {
            std::size_t idx = 0;
            for (; idx < dk.rules.size(); ++idx) {
                const auto &p = dk.rules[idx].pattern;
                if (p[0] == atom(b.field, j - 1) && p[1] == b.kernel) break;
            }
            const Rule &prev = dk.rules[idx];
            NCPolynomial kt = substitute(NCPolynomial::from_atom(Mode::matrix, b.kernel.t_derivative()), time);
            NCPolynomial rhs = prev.replacement.differentiate_t() - mx(b.field, j - 1) * kt;
            rhs = substitute(rhs, dk.rules);
            dk.rules.emplace_back(Word{atom(b.field, j), b.kernel}, rhs, false);
        }
    }
    for (auto &r : time) dk.rules.push_back(r);
    return dk;
}

// Recursion w_{n-2} = [K, Sigma]/2, w_{k-1} = -w_k K, with the rewrites applied.
// Returns w_0 .. w_{n-2} (empty for n = 1).
inline std::vector<PolyMatrix> dressing_coefficients(int n, const DressingKernel &dk = make_dressing_kernel())
{
    if (n < 1) throw std::invalid_argument("flow index must be at least 1");
    std::vector<PolyMatrix> w(static_cast<std::size_t>(std::max(n - 1, 0)));
    if (n == 1) return w;
    PolyMatrix cur = commutator(dk.k, model::sigma(Mode::matrix)) * GaussRational(make_rational(1, 2));
    w[static_cast<std::size_t>(n - 2)] = cur;
    for (int k = n - 2; k >= 1; --k) {
        cur = substitute(-(cur * dk.k), dk.rules);
        w[static_cast<std::size_t>(k - 1)] = cur;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].contains_base(Base::K11) || w[k].contains_base(Base::K22)) {
            throw KEliminationError("w_" + std::to_string(k) + " of U^(" + std::to_string(n)
                                    + ") retains kernel blocks: " + w[k].to_string());
        }
    }
    return w;
}

// U^(n) = (lam^(n-1)/2) Sigma + sum_k lam^k w_k, computed in matrix mode.
inline LaxOperator dress_u(int n, Mode mode = Mode::matrix)
{
    auto w = dressing_coefficients(n);
    LaxOperator op = bare_u(n, Mode::matrix);
    op.kind = LaxKind::U_bulk;
    for (std::size_t k = 0; k < w.size(); ++k) op.matrix += MatrixSeries::monomial(w[k], static_cast<int>(k));
    return mode == Mode::scalar ? to_scalar(op) : op;
}

} // namespace laxforge

#endif
