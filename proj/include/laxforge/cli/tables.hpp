#ifndef LAXFORGE_CLI_TABLES_HPP
#define LAXFORGE_CLI_TABLES_HPP

#include <string>
#include <vector>

#include <laxforge/boundary.hpp>
#include <laxforge/cli/golden.hpp>
#include <laxforge/hierarchy.hpp>

namespace laxforge::cli
{

using golden::Object;

inline std::vector<Object> riccati_objects(const RiccatiSolution &sol)
{
    std::vector<Object> out;
    for (int n = 1; n <= sol.order; ++n) out.push_back(Object::of("W" + std::to_string(n), sol.W(n)));
    for (int n = 1; n < sol.order; ++n) out.push_back(Object::of("Z" + std::to_string(n), sol.Z(n)));
    return out;
}

inline std::vector<Object> gamma_objects(const GammaSolution &sol)
{
    std::string prefix = sol.which == GammaKind::gamma ? "Gamma" : "HatGamma";
    std::vector<Object> out;
    for (int k = 1; k <= sol.order; ++k) out.push_back(Object::of(prefix + std::to_string(k), sol[k]));
    return out;
}

enum class Route { gen, dress };

inline Route route_from_string(const std::string &s)
{
    if (s == "gen") return Route::gen;
    if (s == "dress") return Route::dress;
    throw std::invalid_argument("unknown route '" + s + "'");
}

inline LaxOperator hierarchy_u(Route route, int n, Mode mode)
{
    if (route == Route::gen) return generate_u(n, std::nullopt, mode);
    return dress_u(n, mode);
}

inline std::string golden_u_table(Route route)
{
    return route == Route::gen ? "u_gen" : "u_dress";
}

inline std::vector<Object> u_objects(Route route, int n, Mode mode)
{
    return {Object::of("U" + std::to_string(n), hierarchy_u(route, n, mode).matrix)};
}

inline std::vector<Object> charge_objects(ChargeKind kind, int max_k)
{
    std::vector<Object> out;
    for (const auto &c : charges(kind, max_k)) out.push_back(Object::of(to_string(kind) + std::to_string(c.k), c.density));
    return out;
}

// Relations are named by their momentum, evolution equations by the field
// whose t-derivative they carry.
inline std::vector<Object> eom_objects(const EomSystem &sys)
{
    std::vector<Object> out;
    auto lone_atom = [](const NCPolynomial &p, auto pred) -> std::string {
        for (const auto &[w, c] : p.terms()) {
            if (w.size() == 1 && pred(w[0])) return std::string(base_name(w[0].base));
        }
        return "?";
    };
    for (const auto &r : sys.relations) {
        out.push_back(Object::of("relation_" + lone_atom(r, [](const FieldAtom &a) { return a.dx == 0 && a.dt == 0; }), r));
    }
    for (const auto &e : sys.evolution) {
        out.push_back(Object::of("evolution_" + lone_atom(e, [](const FieldAtom &a) { return a.dt == 1 && a.dx == 0; }), e));
    }
    return out;
}

inline std::vector<Object> boundary_objects(const boundary::OpenChargeExpansion &ex)
{
    auto at = [&](const std::vector<NCPolynomial> &v) { return v.at(static_cast<std::size_t>(ex.order - 1)); };
    return {Object::of("bulk", at(ex.bulk)), Object::of("H_plus", at(ex.plus)), Object::of("H_minus", at(ex.minus))};
}

} // namespace laxforge::cli

#endif
