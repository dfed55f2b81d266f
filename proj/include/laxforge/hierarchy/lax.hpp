#ifndef LAXFORGE_HIERARCHY_LAX_HPP
#define LAXFORGE_HIERARCHY_LAX_HPP

#include <string>

#include <laxforge/model.hpp>

namespace laxforge
{

enum class LaxKind { V, U_bulk, U_bare, U_boundary };

inline std::string to_string(LaxKind k)
{
    switch (k) {
    case LaxKind::V: return "V";
    case LaxKind::U_bulk: return "U_bulk";
    case LaxKind::U_bare: return "U_bare";
    case LaxKind::U_boundary: return "U_boundary";
    }
    return "?";
}

// Lax matrix polynomial in lam (non-negative powers); flow_index n for U^(n).
struct LaxOperator {
    MatrixSeries matrix;
    int flow_index = 0;
    LaxKind kind = LaxKind::U_bulk;

    Mode mode() const { return matrix.zero_coefficient().mode(); }
};

inline LaxOperator make_v(Mode mode)
{
    return {model::lax_v(mode), 0, LaxKind::V};
}

// (lam^(n-1)/2) Sigma.
inline LaxOperator bare_u(int n, Mode mode)
{
    return {MatrixSeries::monomial(model::sigma(mode) * GaussRational(make_rational(1, 2)), n - 1), n, LaxKind::U_bare};
}

inline LaxOperator to_scalar(const LaxOperator &op)
{
    return {op.matrix.map([](const PolyMatrix &m) { return m.to_scalar(); }), op.flow_index, op.kind};
}

// Sets every field to zero: only field-free words survive.
inline PolyMatrix drop_fields(const PolyMatrix &m)
{
    return m.map([](const NCPolynomial &p) {
        NCPolynomial r(p.mode(), p.shape(), p.kind());
        for (const auto &[w, c] : p.terms()) {
            bool free = true;
            for (const auto &a : w) free = free && is_parameter(a.base);
            if (free) r.add_term(w, c);
        }
        return r;
    });
}

inline MatrixSeries drop_fields(const MatrixSeries &s)
{
    return s.map([](const PolyMatrix &m) { return drop_fields(m); });
}

} // namespace laxforge

#endif
