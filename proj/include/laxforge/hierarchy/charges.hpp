#ifndef LAXFORGE_HIERARCHY_CHARGES_HPP
#define LAXFORGE_HIERARCHY_CHARGES_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/hierarchy/cache.hpp>

namespace laxforge
{

enum class ChargeKind { H, I };

inline std::string to_string(ChargeKind k)
{
    return k == ChargeKind::H ? "H" : "I";
}

// Integrand over t in [-tau, tau]; boundary_terms hold contributions
// evaluated at t = tau and t = -tau when the charge has them.
struct ChargeDensity {
    ChargeKind kind = ChargeKind::H;
    int k = 0;
    NCPolynomial density;
    std::optional<std::pair<NCPolynomial, NCPolynomial>> boundary_terms;
};

// H^(k): densities of Z_11^(k) (scalar mode).
// I^(k): tr(uh Gamma^(k+1) + pi Gamma^(k)) (matrix mode, formal traces).
inline std::vector<ChargeDensity> charges(ChargeKind kind, int max_k)
{
    if (max_k < 1) throw std::invalid_argument("max_k must be at least 1");
    std::vector<ChargeDensity> out;
    if (kind == ChargeKind::H) {
        auto sol = RiccatiCache::instance().w_z(max_k + 1, Mode::scalar);
        for (int k = 1; k <= max_k; ++k) out.push_back({kind, k, sol->Z(k)(0, 0), std::nullopt});
        return out;
    }
    auto gamma = RiccatiCache::instance().gamma(max_k + 1, GammaKind::gamma, Mode::matrix);
    auto uh = model::field(Mode::matrix, Base::uh);
    auto pi = model::field(Mode::matrix, Base::pi);
    for (int k = 1; k <= max_k; ++k) {
        NCPolynomial d = (uh * (*gamma)[k + 1] + pi * (*gamma)[k]).trace();
        out.push_back({kind, k, std::move(d), std::nullopt});
    }
    return out;
}

} // namespace laxforge

#endif
