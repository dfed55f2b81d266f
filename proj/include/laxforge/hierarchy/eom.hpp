#ifndef LAXFORGE_HIERARCHY_EOM_HPP
#define LAXFORGE_HIERARCHY_EOM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/hierarchy/charges.hpp>
#include <laxforge/hierarchy/dressing.hpp>
#include <laxforge/hierarchy/generate.hpp>
#include <laxforge/hierarchy/lax.hpp>
#include <laxforge/ncpoly/euler.hpp>
#include <laxforge/ncpoly/substitute.hpp>

namespace laxforge
{

class UnsupportedEomError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// d_{x_n} V - d_t U + [V, U], with x_n-derivatives as formal atoms.
inline MatrixSeries zero_curvature_residual(const LaxOperator &u_op, const LaxOperator &v_op)
{
    if (u_op.mode() != v_op.mode()) throw ShapeError("U and V are in different modes");
    int flow = u_op.flow_index;
    if (flow < 1) throw std::invalid_argument("U carries no flow index");
    return model::differentiate_x(v_op.matrix, flow) - model::differentiate_t(u_op.matrix)
           + model::commutator(v_op.matrix, u_op.matrix);
}

struct EomSystem {
    int flow = 0;
    Mode mode = Mode::scalar;
    // x_n-derivative atom -> expression free of x_n-derivatives, in the order found.
    RuleSet rules;
    // Presentation forms, each = 0: first-order relations (e.g. pi - uh_x),
    // then evolution equations with the x-derivative leading coefficient +1.
    std::vector<NCPolynomial> relations;
    std::vector<NCPolynomial> evolution;
};

namespace detail
{

inline bool has_flow_derivative(const NCPolynomial &p, int flow)
{
    for (const auto &a : p.atoms()) {
        if (a.dx > 0 && a.flow == flow) return true;
    }
    return false;
}

// Atom `a` such that eq = c a + rest with c constant and rest free of a and
// of its derivatives; the highest x-order candidate wins.
inline std::optional<std::pair<FieldAtom, GaussRational>> solvable_atom(const NCPolynomial &eq, int flow)
{
    std::optional<std::pair<FieldAtom, GaussRational>> best;
    for (const auto &[w, c] : eq.terms()) {
        if (w.size() != 1 || w[0].dx == 0 || w[0].flow != flow) continue;
        const FieldAtom a = w[0];
        bool isolated = true;
        for (const auto &[w2, c2] : eq.terms()) {
            if (w2 == w) continue;
            for (const auto &b : w2) {
                if (b.base == a.base && b.flow == flow && b.dx >= a.dx) isolated = false;
            }
        }
        if (!isolated) continue;
        if (!best || a.dx > best->first.dx || (a.dx == best->first.dx && a.dt < best->first.dt)) best = {{a, c}};
    }
    return best;
}

} // namespace detail

// Solves the zero-curvature residual entry by entry for its x_n-derivative atoms.
inline EomSystem extract_eom(const LaxOperator &u_op, const LaxOperator &v_op)
{
    MatrixSeries res = zero_curvature_residual(u_op, v_op);
    const int flow = u_op.flow_index;
    EomSystem sys;
    sys.flow = flow;
    sys.mode = u_op.mode();

    std::vector<NCPolynomial> pending;
    for (auto it = res.coefficients().rbegin(); it != res.coefficients().rend(); ++it) {
        const PolyMatrix &m = it->second;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (!m(i, j).is_zero()) pending.push_back(m(i, j));
            }
        }
    }

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<NCPolynomial> next;
        for (const auto &eq0 : pending) {
            NCPolynomial eq = substitute(eq0, sys.rules);
            if (eq.is_zero()) continue;
            auto pick = detail::solvable_atom(eq, flow);
            if (!pick) {
                next.push_back(eq);
                continue;
            }
            const auto &[a, c] = *pick;
            NCPolynomial rest = eq - NCPolynomial::from_atom(eq.mode(), a, c);
            NCPolynomial rhs = -rest * (GaussRational(1) / c);
            sys.rules.emplace_back(a, rhs);
            progress = true;
        }
        pending = std::move(next);
    }
    for (const auto &eq : pending) {
        if (!detail::has_flow_derivative(eq, flow)) {
            throw UnsupportedEomError("zero-curvature entry imposes a constraint without x-derivatives: "
                                      + eq.to_string());
        }
        throw UnsupportedEomError("zero-curvature entry is not linear in a leading x-derivative: " + eq.to_string());
    }
    // Keep right-hand sides fully reduced.
    for (auto &r : sys.rules) r.replacement = substitute(r.replacement, sys.rules);

    // Presentation: a -> b with b a single underived field gives the relation b = a.
    RuleSet inverse;
    for (const auto &r : sys.rules) {
        const FieldAtom &a = r.pattern[0];
        const auto &terms = r.replacement.terms();
        bool simple = terms.size() == 1 && terms.begin()->first.size() == 1 && terms.begin()->second.is_one()
                      && terms.begin()->first[0].dt == 0 && terms.begin()->first[0].dx == 0 && a.dx == 1 && a.dt == 0;
        if (simple) {
            FieldAtom b = terms.begin()->first[0];
            sys.relations.push_back(NCPolynomial::from_atom(sys.mode, b) - NCPolynomial::from_atom(sys.mode, a));
            inverse.emplace_back(b, NCPolynomial::from_atom(sys.mode, a));
        }
    }
    for (const auto &r : sys.rules) {
        const FieldAtom &a = r.pattern[0];
        NCPolynomial eq = NCPolynomial::from_atom(sys.mode, a) - r.replacement;
        bool is_relation = false;
        for (const auto &rel : sys.relations) is_relation = is_relation || rel.coefficient(Word{a}) == GaussRational(-1);
        if (is_relation) continue;
        eq = substitute(eq, inverse);
        // Leading x-derivative coefficient +1.
        GaussRational lead;
        int top = -1;
        for (const auto &[w, c] : eq.terms()) {
            if (w.size() == 1 && w[0].flow == flow && w[0].dx > top) {
                top = w[0].dx;
                lead = c;
            }
        }
        if (top > 0 && !lead.is_one()) eq *= GaussRational(1) / lead;
        sys.evolution.push_back(eq);
    }
    return sys;
}

// Residual after imposing the rules.
inline MatrixSeries reduced_residual(const LaxOperator &u_op, const LaxOperator &v_op, const RuleSet &rules)
{
    return substitute(zero_curvature_residual(u_op, v_op), rules);
}

// x_2 flow of the NLS pair (V, U^(2)).
inline EomSystem nls_eom(Mode mode)
{
    LaxOperator u2 = mode == Mode::scalar ? generate_u(2) : dress_u(2, Mode::matrix);
    return extract_eom(u2, make_v(mode));
}

struct ConservationRecord {
    ChargeKind kind = ChargeKind::H;
    int k = 0;
    NCPolynomial density;
    NCPolynomial dx_density; // d_x density with x-derivatives eliminated
    bool conserved = false;
    std::optional<NCPolynomial> flux; // j with d_x density = d_t j
    std::string reason;
};

// H^(k) in scalar mode, I^(k) (formal traces) in matrix mode.
inline ConservationRecord verify_conservation(int k, ChargeKind kind = ChargeKind::H)
{
    Mode mode = kind == ChargeKind::H ? Mode::scalar : Mode::matrix;
    EomSystem eom = nls_eom(mode);
    ConservationRecord rec;
    rec.kind = kind;
    rec.k = k;
    rec.density = charges(kind, k).back().density;
    rec.dx_density = substitute(rec.density.differentiate_x(2), eom.rules);
    if (rec.dx_density.is_zero()) {
        rec.conserved = true;
        rec.flux = NCPolynomial(rec.density.mode(), rec.density.shape(), rec.density.kind());
        return rec;
    }
    auto total = is_total_t_derivative(rec.dx_density);
    rec.conserved = total.is_total;
    rec.flux = total.antiderivative;
    rec.reason = total.reason;
    return rec;
}

} // namespace laxforge

#endif
