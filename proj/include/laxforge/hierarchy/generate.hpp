#ifndef LAXFORGE_HIERARCHY_GENERATE_HPP
#define LAXFORGE_HIERARCHY_GENERATE_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <laxforge/hierarchy/cache.hpp>
#include <laxforge/hierarchy/lax.hpp>

namespace laxforge
{

class InsufficientOrderError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// M(lam) = (1 + W) D (1 + W)^-1, known through lam^-truncation.
inline MatrixSeries generating_matrix(int truncation, Mode mode)
{
    int order = std::max(truncation, 1);
    auto sol = RiccatiCache::instance().w_z(order, mode);
    MatrixSeries w = sol->w_series();
    w.truncate(truncation);
    MatrixSeries one = MatrixSeries::monomial(PolyMatrix::identity(mode), 0);
    MatrixSeries g = one + w;
    MatrixSeries d = MatrixSeries::monomial(model::projector_d(mode), 0);
    return g * d * series_invert(g, truncation);
}

// Coefficient of lam^-n in (1/(lam - mu)) M(lam), with mu relabelled lam:
// U^(n) = sum_{j<n} lam^(n-1-j) M_j.
inline LaxOperator generate_u(int n, std::optional<int> truncation = std::nullopt, Mode mode = Mode::scalar)
{
    if (n < 1) throw std::invalid_argument("flow index must be at least 1");
    int t = truncation.value_or(n - 1);
    if (t < n - 1) {
        throw InsufficientOrderError("U^(" + std::to_string(n) + ") needs the Riccati series through order "
                                     + std::to_string(n - 1) + ", got " + std::to_string(t));
    }
    MatrixSeries m = generating_matrix(t, mode);
    MatrixSeries u(PolyMatrix::zero(mode));
    for (int j = 0; j < n; ++j) u.set(n - 1 - j, m.coeff(-j));
    return {u, n, LaxKind::U_bulk};
}

} // namespace laxforge

#endif
