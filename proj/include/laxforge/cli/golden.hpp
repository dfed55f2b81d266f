#ifndef LAXFORGE_CLI_GOLDEN_HPP
#define LAXFORGE_CLI_GOLDEN_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <laxforge/boundary/open.hpp>
#include <laxforge/ncpoly/json.hpp>
#include <laxforge/ncpoly/parse.hpp>

namespace laxforge::golden
{

// A named result as emitted by the CLI: a polynomial or a matrix polynomial in lam.
struct Object {
    std::string id;
    std::optional<NCPolynomial> polynomial;
    std::optional<MatrixSeries> matrix;

    static Object of(std::string id, NCPolynomial p) { return {std::move(id), std::move(p), std::nullopt}; }
    static Object of(std::string id, MatrixSeries m) { return {std::move(id), std::nullopt, std::move(m)}; }
    static Object of(std::string id, const PolyMatrix &m)
    {
        MatrixSeries s(PolyMatrix(m.mode(), m.row_dims(), m.col_dims()));
        s.set(0, m);
        return of(std::move(id), std::move(s));
    }
};

inline Json to_json(const Object &o)
{
    Json j;
    j["id"] = o.id;
    if (o.polynomial) {
        j["kind"] = "polynomial";
        j["value"] = to_json(*o.polynomial);
    } else {
        j["kind"] = "matrix_series";
        j["value"] = to_json(*o.matrix);
    }
    return j;
}

inline Object object_from_json(const Json &j)
{
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "polynomial") return Object::of(j.at("id").get<std::string>(), polynomial_from_json(j.at("value")));
    if (kind == "matrix_series") {
        return Object::of(j.at("id").get<std::string>(), series_from_json<PolyMatrix>(j.at("value")));
    }
    throw SchemaError("unknown object kind '" + kind + "'");
}

// One paper entry. `cells` holds a single expression, or the rows of a block
// matrix. `readings` are alternative transcriptions of an ambiguous formula.
struct Entry {
    std::string id;
    bool trace = false;
    bool up_to_constants = false;
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<std::vector<std::string>>> readings;
    std::optional<std::string> undefined_symbol;
    std::vector<std::string> candidates;
    std::string note;

    bool is_matrix() const { return cells.size() > 1 || (!cells.empty() && cells[0].size() > 1); }
};

struct Table {
    std::string name;
    Mode mode = Mode::scalar;
    std::vector<Entry> entries;
};

namespace detail
{

inline std::vector<std::vector<std::string>> cells_from_json(const Json &v)
{
    if (v.is_string()) return {{v.get<std::string>()}};
    std::vector<std::vector<std::string>> rows;
    for (const auto &r : v) rows.push_back(r.get<std::vector<std::string>>());
    return rows;
}

} // namespace detail

inline Table table_from_json(const Json &j)
{
    try {
        Table t;
        t.name = j.at("table").get<std::string>();
        t.mode = mode_from_string(j.at("mode").get<std::string>());
        for (const auto &e : j.at("entries")) {
            Entry en;
            en.id = e.at("id").get<std::string>();
            en.cells = detail::cells_from_json(e.at("value"));
            en.trace = e.value("trace", false);
            en.up_to_constants = e.value("up_to_constants", false);
            if (e.contains("readings")) {
                for (const auto &r : e.at("readings")) en.readings.push_back(detail::cells_from_json(r));
            }
            if (e.contains("undefined")) {
                en.undefined_symbol = e.at("undefined").at("symbol").get<std::string>();
                en.candidates = e.at("undefined").at("candidates").get<std::vector<std::string>>();
            }
            en.note = e.value("note", "");
            t.entries.push_back(std::move(en));
        }
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed golden table: ") + e.what());
    }
}

inline Table load_table(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    return table_from_json(j);
}

struct CellResult {
    std::size_t row = 0, col = 0;
    bool match = false;
    std::string golden, computed, diff; // diff = computed - golden
    std::optional<std::string> reading;
    std::optional<std::string> candidate;
    std::vector<std::string> mismatched_words;
};

struct EntryResult {
    std::string id;
    std::string status; // match, mismatch, missing
    std::string note;
    std::vector<CellResult> cells;

    bool ok() const { return status == "match"; }
};

struct TableResult {
    std::string name;
    std::vector<EntryResult> entries;

    bool pass() const
    {
        for (const auto &e : entries) {
            if (e.status == "mismatch") return false;
        }
        return true;
    }

    const EntryResult *find(const std::string &id) const
    {
        for (const auto &e : entries) {
            if (e.id == id) return &e;
        }
        return nullptr;
    }
};

namespace detail
{

inline std::string series_text(const ScalarSeries &s)
{
    if (s.is_zero()) return "0";
    std::string out;
    for (auto it = s.coefficients().rbegin(); it != s.coefficients().rend(); ++it) {
        const auto &[k, c] = *it;
        std::string p = c.to_string();
        std::string piece;
        if (k == 0) {
            piece = p;
        } else {
            std::string lam = k == 1 ? "lam" : "lam^" + std::to_string(k);
            if (p == "1" || p == "-1") {
                piece = (p == "-1" ? "-" : "") + lam;
            } else if (c.size() == 1) {
                piece = p + "*" + lam;
            } else {
                piece = "(" + p + ")*" + lam;
            }
        }
        if (out.empty()) {
            out = piece;
        } else if (piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

inline ScalarSeries entry_of(const MatrixSeries &m, std::size_t i, std::size_t j)
{
    ScalarSeries s(m.zero_coefficient()(i, j));
    for (const auto &[k, c] : m.coefficients()) s.set(k, c(i, j));
    return s;
}

inline ScalarSeries as_series(const NCPolynomial &p)
{
    ScalarSeries s(NCPolynomial(p.mode(), p.shape(), p.kind()));
    s.set(0, p);
    return s;
}

// Golden side: a trace entry holds the expression inside the trace.
inline ScalarSeries finish(ScalarSeries s, const Entry &e, bool golden)
{
    bool trace = golden && e.trace;
    if (!trace && !e.up_to_constants) return s;
    ScalarSeries out(trace ? s.zero_coefficient().trace() : s.zero_coefficient());
    for (const auto &[k, c] : s.coefficients()) {
        NCPolynomial v = trace ? c.trace() : c;
        if (e.up_to_constants) v = boundary::strip_constants(v);
        out.set(k, v);
    }
    return out;
}

inline std::string replace_symbol(const std::string &text, const std::string &symbol, const std::string &with)
{
    return std::regex_replace(text, std::regex("\\b" + symbol + "\\b"), with);
}

inline std::size_t term_count(const ScalarSeries &s)
{
    std::size_t n = 0;
    for (const auto &[k, c] : s.coefficients()) n += c.size();
    return n;
}

// Terms of the paper formula free of the undefined symbol, which is parsed as
// a spare constant atom and then dropped.
inline std::vector<std::string> unmatched_symbol_free_words(const std::string &text, const Entry &e, Mode mode,
                                                            Shape shape, const ScalarSeries &computed)
{
    const std::string spare = "kinvm";
    if (mode != Mode::scalar) throw SchemaError("undefined-symbol entries are supported in scalar mode only");
    ScalarSeries g = finish(parse_series(replace_symbol(text, *e.undefined_symbol, spare), mode, shape), e, true);
    std::vector<std::string> bad;
    for (const auto &[k, c] : g.coefficients()) {
        NCPolynomial cc = computed.coefficients().count(k) ? computed.coefficients().at(k) : NCPolynomial(c.mode(), c.shape());
        for (const auto &[w, coef] : c.terms()) {
            bool has_spare = false;
            for (const auto &a : w) has_spare = has_spare || a.base == Base::kinv_minus;
            if (has_spare) continue;
            if (cc.coefficient(w) != coef) bad.push_back(NCPolynomial::from_word(mode, w, coef).to_string());
        }
    }
    return bad;
}

inline CellResult compare_cell(const Entry &e, std::size_t i, std::size_t j, Mode mode, Shape shape,
                               const ScalarSeries &computed_raw)
{
    CellResult r;
    r.row = i;
    r.col = j;
    r.golden = e.cells[i][j];
    ScalarSeries computed = finish(computed_raw, e, false);
    r.computed = series_text(computed);

    std::vector<std::string> texts{e.cells[i][j]};
    for (const auto &rd : e.readings) texts.push_back(rd.at(i).at(j));

    std::optional<std::size_t> best_terms;
    for (std::size_t t = 0; t < texts.size(); ++t) {
        std::vector<std::optional<std::string>> subs{std::nullopt};
        if (e.undefined_symbol) {
            subs.clear();
            for (const auto &c : e.candidates) subs.emplace_back(c);
        }
        for (const auto &sub : subs) {
            std::string text = sub ? replace_symbol(texts[t], *e.undefined_symbol, *sub) : texts[t];
            ScalarSeries diff = computed - finish(parse_series(text, mode, shape), e, true);
            std::size_t n = term_count(diff);
            if (!best_terms || n < *best_terms) {
                best_terms = n;
                r.diff = series_text(diff);
                r.reading = t ? std::optional<std::string>(texts[t]) : std::nullopt;
                r.candidate = sub;
            }
        }
    }
    if (e.undefined_symbol) {
        r.mismatched_words = unmatched_symbol_free_words(e.cells[i][j], e, mode, shape, computed);
        r.match = r.mismatched_words.empty();
    } else {
        r.match = best_terms == 0u;
    }
    return r;
}

} // namespace detail

inline EntryResult compare_entry(const Entry &e, Mode mode, const Object &o)
{
    EntryResult res;
    res.id = e.id;
    res.note = e.note;
    bool all = true;
    if (e.is_matrix()) {
        if (!o.matrix) throw SchemaError(e.id + ": paper entry is a matrix, computed object is not");
        const PolyMatrix &z = o.matrix->zero_coefficient();
        if (z.rows() != e.cells.size()) throw SchemaError(e.id + ": row count differs");
        for (std::size_t i = 0; i < z.rows(); ++i) {
            if (e.cells[i].size() != z.cols()) throw SchemaError(e.id + ": column count differs");
            for (std::size_t j = 0; j < z.cols(); ++j) {
                Shape shape = z(i, j).shape();
                auto c = detail::compare_cell(e, i, j, mode, shape, detail::entry_of(*o.matrix, i, j));
                all = all && c.match;
                res.cells.push_back(std::move(c));
            }
        }
    } else {
        ScalarSeries computed = o.polynomial ? detail::as_series(*o.polynomial) : detail::entry_of(*o.matrix, 0, 0);
        Shape shape = computed.zero_coefficient().shape();
        if (e.trace) shape = Shape{Dim::N, Dim::N};
        auto c = detail::compare_cell(e, 0, 0, mode, shape, computed);
        all = c.match;
        res.cells.push_back(std::move(c));
    }
    res.status = all ? "match" : "mismatch";
    return res;
}

// Entries without a computed counterpart are reported as missing, not failed.
inline TableResult compare(const Table &t, const std::vector<Object> &computed)
{
    TableResult r;
    r.name = t.name;
    for (const auto &e : t.entries) {
        const Object *o = nullptr;
        for (const auto &c : computed) {
            if (c.id == e.id) o = &c;
        }
        if (!o) {
            r.entries.push_back({e.id, "missing", e.note, {}});
            continue;
        }
        r.entries.push_back(compare_entry(e, t.mode, *o));
    }
    return r;
}

inline Json to_json(const TableResult &r)
{
    Json j;
    j["table"] = r.name;
    j["pass"] = r.pass();
    Json entries = Json::array();
    for (const auto &e : r.entries) {
        Json je;
        je["id"] = e.id;
        je["status"] = e.status;
        if (!e.note.empty()) je["note"] = e.note;
        if (e.status == "mismatch") {
            Json cells = Json::array();
            for (const auto &c : e.cells) {
                if (c.match && c.diff == "0") continue;
                Json jc;
                jc["cell"] = {c.row, c.col};
                jc["golden"] = c.golden;
                jc["computed"] = c.computed;
                jc["computed_minus_golden"] = c.diff;
                if (c.reading) jc["closest_reading"] = *c.reading;
                if (c.candidate) jc["closest_substitution"] = *c.candidate;
                if (!c.mismatched_words.empty()) jc["mismatched_symbol_free_terms"] = c.mismatched_words;
                cells.push_back(std::move(jc));
            }
            je["cells"] = std::move(cells);
        }
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    return j;
}

} // namespace laxforge::golden

#endif
