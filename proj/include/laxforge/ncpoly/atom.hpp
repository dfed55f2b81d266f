#ifndef LAXFORGE_NCPOLY_ATOM_HPP
#define LAXFORGE_NCPOLY_ATOM_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace laxforge
{

enum class Mode : std::uint8_t { scalar, matrix };

inline std::string_view to_string(Mode m)
{
    return m == Mode::scalar ? "scalar" : "matrix";
}

inline Mode mode_from_string(std::string_view s)
{
    if (s == "scalar") return Mode::scalar;
    if (s == "matrix") return Mode::matrix;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

// Symbolic block dimension.
enum class Dim : std::uint8_t { one, N, M };

inline std::string_view to_string(Dim d)
{
    switch (d) {
    case Dim::one: return "1";
    case Dim::N: return "N";
    case Dim::M: return "M";
    }
    return "?";
}

inline Dim dim_from_string(std::string_view s)
{
    if (s == "1") return Dim::one;
    if (s == "N") return Dim::N;
    if (s == "M") return Dim::M;
    throw std::invalid_argument("unknown block dimension '" + std::string(s) + "'");
}

struct Shape {
    Dim rows = Dim::one;
    Dim cols = Dim::one;

    friend bool operator==(const Shape &, const Shape &) = default;

    std::string to_string() const
    {
        return std::string(laxforge::to_string(rows)) + "x" + std::string(laxforge::to_string(cols));
    }
};

inline constexpr Shape scalar_shape{Dim::one, Dim::one};

class ShapeError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// Fields of the model, the two opaque diagonal blocks of the dressing kernel,
// and the boundary constants (scalar mode only).
enum class Base : std::uint8_t { u, uh, pi, pih, K11, K22, xi_plus, xi_minus, kinv_plus, kinv_minus };

inline constexpr std::array<Base, 4> model_fields{Base::u, Base::uh, Base::pi, Base::pih};

inline bool is_field(Base b)
{
    return b == Base::u || b == Base::uh || b == Base::pi || b == Base::pih;
}

inline bool is_kernel_block(Base b)
{
    return b == Base::K11 || b == Base::K22;
}

// Boundary constants: commute with everything and have vanishing derivatives.
inline bool is_parameter(Base b)
{
    return b == Base::xi_plus || b == Base::xi_minus || b == Base::kinv_plus || b == Base::kinv_minus;
}

inline std::string_view base_name(Base b)
{
    switch (b) {
    case Base::u: return "u";
    case Base::uh: return "uh";
    case Base::pi: return "pi";
    case Base::pih: return "pih";
    case Base::K11: return "K11";
    case Base::K22: return "K22";
    case Base::xi_plus: return "xip";
    case Base::xi_minus: return "xim";
    case Base::kinv_plus: return "kinvp";
    case Base::kinv_minus: return "kinvm";
    }
    return "?";
}

inline std::optional<Base> base_from_name(std::string_view s)
{
    for (auto b : {Base::u, Base::uh, Base::pi, Base::pih, Base::K11, Base::K22, Base::xi_plus, Base::xi_minus,
                   Base::kinv_plus, Base::kinv_minus}) {
        if (base_name(b) == s) return b;
    }
    return std::nullopt;
}

// Block shape of a base symbol in matrix mode: u, pih are MxN; uh, pi are NxM.
inline Shape base_shape(Base b, Mode mode)
{
    if (mode == Mode::scalar) return scalar_shape;
    switch (b) {
    case Base::u:
    case Base::pih: return {Dim::M, Dim::N};
    case Base::uh:
    case Base::pi: return {Dim::N, Dim::M};
    case Base::K11: return {Dim::N, Dim::N};
    case Base::K22: return {Dim::M, Dim::M};
    default: throw ShapeError("boundary constants exist only in scalar mode");
    }
}

// One differentiated symbol. dx counts derivatives along the flow x_flow;
// flow is 0 whenever dx is 0.
struct FieldAtom {
    Base base = Base::u;
    std::uint8_t dt = 0;
    std::uint8_t dx = 0;
    std::uint8_t flow = 0;

    friend auto operator<=>(const FieldAtom &, const FieldAtom &) = default;

    FieldAtom t_derivative(int k = 1) const
    {
        FieldAtom a = *this;
        if (is_parameter(base)) throw std::logic_error("derivative of a constant atom");
        a.dt = static_cast<std::uint8_t>(a.dt + k);
        return a;
    }

    FieldAtom x_derivative(int flow_index, int k = 1) const
    {
        if (dx > 0 && flow != flow_index) {
            throw std::logic_error("mixed derivatives along different flows are not supported");
        }
        FieldAtom a = *this;
        a.dx = static_cast<std::uint8_t>(a.dx + k);
        a.flow = static_cast<std::uint8_t>(flow_index);
        return a;
    }

    // Same symbol with all derivatives stripped.
    FieldAtom underived() const { return FieldAtom{base, 0, 0, 0}; }

    // Identity of the dependent variable for variational calculus: t-order stripped.
    FieldAtom dependent_variable() const { return FieldAtom{base, 0, dx, flow}; }

    std::string to_string() const
    {
        std::string s(base_name(base));
        for (int k = 0; k < dx; ++k) s += flow == 2 ? "_x" : "_x" + std::to_string(flow);
        for (int k = 0; k < dt; ++k) s += "_t";
        return s;
    }
};

inline FieldAtom atom(Base b, int dt = 0, int dx = 0, int flow = 0)
{
    return FieldAtom{b, static_cast<std::uint8_t>(dt), static_cast<std::uint8_t>(dx),
                     static_cast<std::uint8_t>(dx > 0 ? (flow == 0 ? 2 : flow) : 0)};
}

using Word = std::vector<FieldAtom>;

} // namespace laxforge

#endif
