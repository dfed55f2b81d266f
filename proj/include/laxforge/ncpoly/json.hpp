#ifndef LAXFORGE_NCPOLY_JSON_HPP
#define LAXFORGE_NCPOLY_JSON_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <laxforge/ncpoly/laurent.hpp>
#include <laxforge/ncpoly/poly_matrix.hpp>
#include <laxforge/ncpoly/polynomial.hpp>

namespace laxforge
{

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline Json to_json(const FieldAtom &a)
{
    Json j;
    j["field"] = std::string(base_name(a.base));
    j["dt"] = a.dt;
    j["dx"] = a.dx;
    j["flow"] = a.flow;
    return j;
}

inline FieldAtom atom_from_json(const Json &j)
{
    auto name = j.at("field").get<std::string>();
    auto b = base_from_name(name);
    if (!b) throw SchemaError("unknown field '" + name + "'");
    FieldAtom a{*b, j.at("dt").get<std::uint8_t>(), j.at("dx").get<std::uint8_t>(), j.value("flow", std::uint8_t{0})};
    if (a.dx == 0) a.flow = 0;
    return a;
}

inline Json to_json(const NCPolynomial &p)
{
    Json j;
    j["mode"] = std::string(to_string(p.mode()));
    j["kind"] = p.is_trace() ? "trace" : "plain";
    j["shape"] = Json::array({std::string(to_string(p.shape().rows)), std::string(to_string(p.shape().cols))});
    Json terms = Json::array();
    for (const auto &[w, c] : p.terms()) {
        Json t;
        t["coeff"] = c.to_string();
        Json word = Json::array();
        for (const auto &a : w) word.push_back(to_json(a));
        t["word"] = std::move(word);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline NCPolynomial polynomial_from_json(const Json &j)
{
    try {
        Mode mode = mode_from_string(j.at("mode").get<std::string>());
        Kind kind = j.value("kind", std::string("plain")) == "trace" ? Kind::trace : Kind::plain;
        const auto &sh = j.at("shape");
        Shape shape{dim_from_string(sh.at(0).get<std::string>()), dim_from_string(sh.at(1).get<std::string>())};
        NCPolynomial p(mode, shape, kind);
        for (const auto &t : j.at("terms")) {
            Word w;
            for (const auto &a : t.at("word")) w.push_back(atom_from_json(a));
            p.add_term(std::move(w), GaussRational::from_string(t.at("coeff").get<std::string>()));
        }
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

inline Json dims_to_json(const std::vector<Dim> &dims)
{
    Json a = Json::array();
    for (auto d : dims) a.push_back(std::string(to_string(d)));
    return a;
}

inline std::vector<Dim> dims_from_json(const Json &j)
{
    std::vector<Dim> out;
    for (const auto &d : j) out.push_back(dim_from_string(d.get<std::string>()));
    return out;
}

inline Json to_json(const PolyMatrix &m)
{
    Json j;
    j["mode"] = std::string(to_string(m.mode()));
    j["row_dims"] = dims_to_json(m.row_dims());
    j["col_dims"] = dims_to_json(m.col_dims());
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline PolyMatrix matrix_from_json(const Json &j)
{
    try {
        Mode mode = mode_from_string(j.at("mode").get<std::string>());
        PolyMatrix m(mode, dims_from_json(j.at("row_dims")), dims_from_json(j.at("col_dims")));
        const auto &rows = j.at("entries");
        if (rows.size() != m.rows()) throw SchemaError("entry rows do not match row_dims");
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (rows[i].size() != m.cols()) throw SchemaError("entry columns do not match col_dims");
            for (std::size_t k = 0; k < m.cols(); ++k) m.set(i, k, polynomial_from_json(rows[i][k]));
        }
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed matrix JSON: ") + e.what());
    }
}

template <typename T>
Json to_json(const LaurentSeries<T> &s)
{
    Json j;
    if (auto t = s.truncation()) {
        j["truncation"] = *t;
    } else {
        j["truncation"] = nullptr;
    }
    j["zero"] = to_json(s.zero_coefficient());
    Json coeffs = Json::array();
    for (auto it = s.coefficients().rbegin(); it != s.coefficients().rend(); ++it) {
        Json c;
        c["power"] = it->first;
        c["value"] = to_json(it->second);
        coeffs.push_back(std::move(c));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

namespace detail
{

template <typename T>
T coefficient_from_json(const Json &j);

template <>
inline NCPolynomial coefficient_from_json<NCPolynomial>(const Json &j)
{
    return polynomial_from_json(j);
}

template <>
inline PolyMatrix coefficient_from_json<PolyMatrix>(const Json &j)
{
    return matrix_from_json(j);
}

} // namespace detail

template <typename T>
LaurentSeries<T> series_from_json(const Json &j)
{
    try {
        std::optional<int> trunc;
        if (!j.at("truncation").is_null()) trunc = j.at("truncation").get<int>();
        LaurentSeries<T> s(detail::coefficient_from_json<T>(j.at("zero")), trunc);
        for (const auto &c : j.at("coeffs")) {
            s.set(c.at("power").get<int>(), detail::coefficient_from_json<T>(c.at("value")));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace laxforge

#endif
