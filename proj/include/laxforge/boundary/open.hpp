#ifndef LAXFORGE_BOUNDARY_OPEN_HPP
#define LAXFORGE_BOUNDARY_OPEN_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/hierarchy/cache.hpp>
#include <laxforge/hierarchy/lax.hpp>
#include <laxforge/ncpoly/substitute.hpp>

namespace laxforge::boundary
{

enum class Side { plus, minus };

inline std::string to_string(Side s)
{
    return s == Side::plus ? "+" : "-";
}

// Boundary constants; nullopt keeps the constant symbolic (atoms xip, kinvp, ...).
struct BoundaryParams {
    std::optional<GaussRational> xi_plus, xi_minus, kappa_plus, kappa_minus;

    NCPolynomial xi(Side s) const
    {
        const auto &v = s == Side::plus ? xi_plus : xi_minus;
        if (v) return NCPolynomial::constant(Mode::scalar, scalar_shape, *v);
        return model::field(Mode::scalar, s == Side::plus ? Base::xi_plus : Base::xi_minus);
    }

    // 1/kappa.
    NCPolynomial kinv(Side s) const
    {
        const auto &v = s == Side::plus ? kappa_plus : kappa_minus;
        if (v) {
            if (v->is_zero()) throw std::domain_error("kappa" + to_string(s) + " must be nonzero");
            return NCPolynomial::constant(Mode::scalar, scalar_shape, GaussRational(1) / *v);
        }
        return model::field(Mode::scalar, s == Side::plus ? Base::kinv_plus : Base::kinv_minus);
    }
};

namespace detail
{

inline NCPolynomial scalar_const(const GaussRational &c)
{
    return NCPolynomial::constant(Mode::scalar, scalar_shape, c);
}

inline PolyMatrix scalar_matrix(NCPolynomial a, NCPolynomial b, NCPolynomial c, NCPolynomial d)
{
    return PolyMatrix::from_blocks(Mode::scalar, std::move(a), std::move(b), std::move(c), std::move(d));
}

inline bool field_free(const Word &w)
{
    for (const auto &a : w) {
        if (!is_parameter(a.base)) return false;
    }
    return true;
}

} // namespace detail

// Drops the words that contain no field.
inline NCPolynomial strip_constants(const NCPolynomial &p)
{
    NCPolynomial r(p.mode(), p.shape(), p.kind());
    for (const auto &[w, c] : p.terms()) {
        if (!detail::field_free(w)) r.add_term(w, c);
    }
    return r;
}

// Omega = antidiag(i, -i).
inline PolyMatrix omega()
{
    auto i = detail::scalar_const(GaussRational::i());
    return detail::scalar_matrix(detail::scalar_const(0), i, -i, detail::scalar_const(0));
}

// K(lam) / kappa = lam [[1/kappa, i], [i, -1/kappa]] + (i xi / kappa) 1.
inline MatrixSeries k_over_kappa(Side s, const BoundaryParams &p)
{
    auto k = p.kinv(s);
    auto i = detail::scalar_const(GaussRational::i());
    auto ixk = i * p.xi(s) * k;
    auto zero = detail::scalar_const(0);
    return MatrixSeries::monomial(detail::scalar_matrix(k, i, i, -k), 1)
           + MatrixSeries::monomial(detail::scalar_matrix(ixk, zero, zero, ixk), 0);
}

struct OpenChargeExpansion {
    int order = 0;
    BoundaryParams params;
    // Index k - 1 holds the lam^-k coefficient, k = 1..order.
    std::vector<NCPolynomial> bulk;      // (Z_11 + hat Z_11) / 2
    std::vector<NCPolynomial> plus_raw;  // (ln W+) / 2 at t = tau
    std::vector<NCPolynomial> minus_raw; // (ln W-) / 2 at t = -tau
    std::vector<NCPolynomial> plus;      // field-independent part removed
    std::vector<NCPolynomial> minus;
    LogPrefix plus_prefix, minus_prefix; // ln(c lam^k) of W+- / kappa+-
};

inline OpenChargeExpansion open_charge_expansion(const BoundaryParams &params, int order)
{
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    auto sol = RiccatiCache::instance().w_z(order + 2, Mode::scalar);
    MatrixSeries w = sol->w_series();
    MatrixSeries one = MatrixSeries::monomial(PolyMatrix::identity(Mode::scalar), 0);
    auto transpose = [](const MatrixSeries &s) { return s.map([](const PolyMatrix &m) { return m.transpose(); }); };
    auto entry11 = [](const MatrixSeries &s) { return s.map([](const PolyMatrix &m) { return m(0, 0); }); };
    MatrixSeries om = MatrixSeries::monomial(omega(), 0);

    MatrixSeries one_w = one + w;
    MatrixSeries one_wh = one + w.reflected();
    ScalarSeries wp = entry11(transpose(one_wh) * om * k_over_kappa(Side::plus, params) * one_w);
    ScalarSeries wm = entry11(series_invert(one_w) * k_over_kappa(Side::minus, params) * om
                              * transpose(series_invert(one_wh)));

    auto lp = series_log(wp, order);
    auto lm = series_log(wm, order);
    OpenChargeExpansion out;
    out.order = order;
    out.params = params;
    out.plus_prefix = lp.prefix;
    out.minus_prefix = lm.prefix;
    GaussRational half(make_rational(1, 2));
    for (int k = 1; k <= order; ++k) {
        NCPolynomial z = sol->Z(k)(0, 0);
        out.bulk.push_back(k % 2 == 0 ? z : NCPolynomial(Mode::scalar, scalar_shape));
        out.plus_raw.push_back(lp.value.coeff(-k) * half);
        out.minus_raw.push_back(lm.value.coeff(-k) * half);
        out.plus.push_back(strip_constants(out.plus_raw.back()));
        out.minus.push_back(strip_constants(out.minus_raw.back()));
    }
    return out;
}

// Bulk U^(2) = [[lam/2, uh], [u, -lam/2]].
inline LaxOperator bulk_u2()
{
    auto u = model::field(Mode::scalar, Base::u);
    auto uh = model::field(Mode::scalar, Base::uh);
    auto z = detail::scalar_const(0);
    auto h = detail::scalar_const(make_rational(1, 2));
    MatrixSeries m = MatrixSeries::monomial(detail::scalar_matrix(h, z, z, -h), 1)
                     + MatrixSeries::monomial(detail::scalar_matrix(z, uh, u, z), 0);
    return {m, 2, LaxKind::U_bulk};
}

// U+ = [[lam/2 - i u/k+, i lam/k+ + u + xi+/k+], [u, -lam/2 + i u/k+]],
// U- = [[lam/2 - i uh/k-, uh], [i lam/k- + uh + xi-/k-, -lam/2 + i uh/k-]].
inline LaxOperator boundary_u(Side side, const BoundaryParams &params)
{
    auto k = params.kinv(side);
    auto xi = params.xi(side);
    auto i = detail::scalar_const(GaussRational::i());
    auto z = detail::scalar_const(0);
    auto h = detail::scalar_const(make_rational(1, 2));
    auto f = model::field(Mode::scalar, side == Side::plus ? Base::u : Base::uh);
    auto d = i * f * k;
    auto dressed = f + xi * k;
    PolyMatrix lam1 = side == Side::plus ? detail::scalar_matrix(h, i * k, z, -h) : detail::scalar_matrix(h, z, i * k, -h);
    PolyMatrix lam0 = side == Side::plus ? detail::scalar_matrix(-d, dressed, f, d) : detail::scalar_matrix(-d, f, dressed, d);
    return {MatrixSeries::monomial(lam1, 1) + MatrixSeries::monomial(lam0, 0), 2, LaxKind::U_boundary};
}

class InconsistentBoundaryError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct BoundaryCondition {
    FieldAtom field;
    NCPolynomial value;
};

// lam-dependent remainder of an entry of delta U; such a condition holds
// only when kappa, xi >> 1.
struct LargeParameterFlag {
    std::size_t row = 0, col = 0;
    int power = 0;
    NCPolynomial coefficient;
};

struct BoundaryConditions {
    std::vector<BoundaryCondition> conditions;
    std::vector<LargeParameterFlag> flags;

    RuleSet rules() const
    {
        RuleSet r;
        for (const auto &c : conditions) r.emplace_back(c.field, c.value, false);
        return r;
    }
};

namespace detail
{

inline std::set<FieldAtom> field_atoms(const NCPolynomial &p)
{
    std::set<FieldAtom> s;
    for (const auto &a : p.atoms()) {
        if (!is_parameter(a.base)) s.insert(a);
    }
    return s;
}

// eq = q a + rest with q free of fields and rest free of a, or nullopt.
inline std::optional<std::pair<NCPolynomial, NCPolynomial>> linear_split(const NCPolynomial &eq, const FieldAtom &a)
{
    NCPolynomial q(Mode::scalar, scalar_shape), rest(Mode::scalar, scalar_shape);
    for (const auto &[w, c] : eq.terms()) {
        int hits = 0;
        Word others;
        for (const auto &x : w) {
            if (x == a) {
                ++hits;
            } else {
                others.push_back(x);
            }
        }
        if (hits > 1) return std::nullopt;
        if (hits == 1) {
            if (!field_free(others)) return std::nullopt;
            q.add_term(others, c);
        } else {
            rest.add_term(w, c);
        }
    }
    return std::make_pair(q, rest);
}

} // namespace detail

// Solves delta U = bdry - bulk = 0 entrywise at lam^0 and flags every
// lam-dependent leftover.
inline BoundaryConditions extract_boundary_conditions(const LaxOperator &bulk, const LaxOperator &bdry)
{
    if (bulk.mode() != Mode::scalar || bdry.mode() != Mode::scalar) {
        throw ShapeError("boundary operators are 2x2 scalar-mode matrices");
    }
    MatrixSeries delta = bdry.matrix - bulk.matrix;
    PolyMatrix d0 = delta.coeff(0);
    std::vector<NCPolynomial> eqs;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            if (!d0(i, j).is_zero()) eqs.push_back(d0(i, j));
        }
    }
    BoundaryConditions out;
    while (!eqs.empty()) {
        std::size_t best = eqs.size();
        std::size_t best_count = 0;
        for (std::size_t k = 0; k < eqs.size(); ++k) {
            auto n = detail::field_atoms(eqs[k]).size();
            if (n == 0) {
                throw InconsistentBoundaryError("boundary equation " + eqs[k].to_string()
                                                + " = 0 involves no field");
            }
            if (best == eqs.size() || n < best_count) {
                best = k;
                best_count = n;
            }
        }
        const NCPolynomial eq = eqs[best];
        std::optional<BoundaryCondition> found;
        for (const auto &a : detail::field_atoms(eq)) {
            auto split = detail::linear_split(eq, a);
            if (!split) continue;
            auto &[q, rest] = *split;
            if (rest.is_zero()) {
                found = BoundaryCondition{a, NCPolynomial(Mode::scalar, scalar_shape)};
                break;
            }
            if (q.is_constant()) {
                found = BoundaryCondition{a, rest * (GaussRational(-1) / q.constant_term())};
                break;
            }
        }
        if (!found) throw std::runtime_error("cannot solve boundary equation " + eq.to_string() + " = 0");
        RuleSet rule{Rule(found->field, found->value, false)};
        std::vector<NCPolynomial> next;
        for (std::size_t k = 0; k < eqs.size(); ++k) {
            if (k == best) continue;
            NCPolynomial r = substitute(eqs[k], rule);
            if (!r.is_zero()) next.push_back(std::move(r));
        }
        for (auto &c : out.conditions) c.value = substitute(c.value, rule);
        out.conditions.push_back(std::move(*found));
        eqs = std::move(next);
    }
    auto rules = out.rules();
    for (const auto &[p, m] : delta.coefficients()) {
        if (p == 0) continue;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                NCPolynomial c = rules.empty() ? m(i, j) : substitute(m(i, j), rules);
                if (!c.is_zero()) out.flags.push_back({i, j, p, c});
            }
        }
    }
    return out;
}

// delta U with the conditions imposed.
inline MatrixSeries apply_conditions(const MatrixSeries &delta, const BoundaryConditions &bc)
{
    auto rules = bc.rules();
    if (rules.empty()) return delta;
    return delta.map([&](const PolyMatrix &m) { return substitute(m, rules); });
}

// Flags as a matrix series, for comparison with apply_conditions.
inline MatrixSeries flag_series(const BoundaryConditions &bc)
{
    MatrixSeries s(PolyMatrix::zero(Mode::scalar));
    for (const auto &f : bc.flags) {
        PolyMatrix m = PolyMatrix::zero(Mode::scalar);
        m.set(f.row, f.col, f.coefficient);
        s += MatrixSeries::monomial(m, f.power);
    }
    return s;
}

} // namespace laxforge::boundary

#endif
