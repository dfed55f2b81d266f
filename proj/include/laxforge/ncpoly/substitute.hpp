#ifndef LAXFORGE_NCPOLY_SUBSTITUTE_HPP
#define LAXFORGE_NCPOLY_SUBSTITUTE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/ncpoly/laurent.hpp>
#include <laxforge/ncpoly/poly_matrix.hpp>
#include <laxforge/ncpoly/polynomial.hpp>

namespace laxforge
{

class NonConfluentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// pattern -> replacement. A single-atom pattern also matches every further
// t- and x-derivative of itself, the replacement being differentiated
// accordingly; longer patterns match contiguous subwords literally
// (sub-multisets in scalar mode).
struct Rule {
    Word pattern;
    NCPolynomial replacement;
    bool propagate_derivatives = true;

    Rule(Word pat, NCPolynomial rep, bool propagate = true)
        : pattern(std::move(pat)), replacement(std::move(rep)), propagate_derivatives(propagate)
    {
        if (pattern.empty()) throw std::invalid_argument("empty substitution pattern");
        if (replacement.is_trace()) throw std::invalid_argument("replacement cannot be a formal trace");
        detail::check_chain(pattern, replacement.mode());
        auto want = detail::word_shape(pattern, replacement.mode());
        if (replacement.shape() != want) {
            throw ShapeError("replacement shape " + replacement.shape().to_string() + " does not match pattern shape "
                             + want.to_string());
        }
        if (replacement.mode() == Mode::scalar) std::sort(pattern.begin(), pattern.end());
    }

    Rule(FieldAtom a, NCPolynomial rep, bool propagate = true) : Rule(Word{a}, std::move(rep), propagate) {}

    std::string to_string() const
    {
        std::string s;
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            if (k) s += "*";
            s += pattern[k].to_string();
        }
        return s + " -> " + replacement.to_string();
    }
};

using RuleSet = std::vector<Rule>;

namespace detail
{

// Derivative offsets taking `pattern` to `target`, when target is a derivative of it.
inline std::optional<std::pair<int, int>> derivative_offset(const FieldAtom &pattern, const FieldAtom &target,
                                                           bool propagate)
{
    if (pattern.base != target.base) return std::nullopt;
    if (!propagate) {
        if (pattern == target) return std::pair{0, 0};
        return std::nullopt;
    }
    if (target.dt < pattern.dt || target.dx < pattern.dx) return std::nullopt;
    if (pattern.dx > 0 && target.flow != pattern.flow) return std::nullopt;
    return std::pair{target.dt - pattern.dt, target.dx - pattern.dx};
}

inline NCPolynomial word_poly(Mode mode, const Word &w, Shape identity_shape)
{
    if (w.empty()) return NCPolynomial::constant(mode, identity_shape, 1);
    return NCPolynomial::from_word(mode, w);
}

struct Match {
    std::size_t begin = 0;
    std::size_t length = 0;
    int dt = 0;
    int dx = 0;
    int flow = 0;
};

inline std::optional<Match> find_match(const Word &w, const Rule &rule, Mode mode)
{
    const Word &pat = rule.pattern;
    if (pat.size() == 1) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (auto off = derivative_offset(pat[0], w[k], rule.propagate_derivatives)) {
                return Match{k, 1, off->first, off->second, w[k].flow};
            }
        }
        return std::nullopt;
    }
    if (pat.size() > w.size()) return std::nullopt;
    if (mode == Mode::matrix) {
        for (std::size_t k = 0; k + pat.size() <= w.size(); ++k) {
            if (std::equal(pat.begin(), pat.end(), w.begin() + static_cast<std::ptrdiff_t>(k))) {
                return Match{k, pat.size(), 0, 0, 0};
            }
        }
        return std::nullopt;
    }
    // Scalar: sub-multiset; both words are sorted.
    if (std::includes(w.begin(), w.end(), pat.begin(), pat.end())) return Match{0, pat.size(), 0, 0, 0};
    return std::nullopt;
}

inline NCPolynomial apply_once_to_word(const Word &w, const Rule &rule, const Match &m, Mode mode)
{
    NCPolynomial rep = rule.replacement;
    if (m.dt > 0) rep = rep.differentiate_t(m.dt);
    for (int k = 0; k < m.dx; ++k) rep = rep.differentiate_x(m.flow);
    if (mode == Mode::scalar) {
        Word rest = w;
        if (rule.pattern.size() == 1) {
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m.begin));
        } else {
            for (const auto &a : rule.pattern) rest.erase(std::find(rest.begin(), rest.end(), a));
        }
        if (rest.empty()) return rep;
        return NCPolynomial::from_word(mode, rest) * rep;
    }
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m.begin));
    Word suffix(w.begin() + static_cast<std::ptrdiff_t>(m.begin + m.length), w.end());
    NCPolynomial out = rep;
    if (!prefix.empty()) out = NCPolynomial::from_word(mode, prefix) * out;
    if (!suffix.empty()) out = out * NCPolynomial::from_word(mode, suffix);
    return out;
}

} // namespace detail

// One rewriting sweep: every term is rewritten by the first rule matching it.
// Returns nullopt when no rule applies anywhere.
inline std::optional<NCPolynomial> rewrite_step(const NCPolynomial &p, const RuleSet &rules)
{
    bool changed = false;
    NCPolynomial out(p.mode(), p.shape(), p.kind());
    for (const auto &[w, c] : p.terms()) {
        bool done = false;
        std::size_t rotations = (p.is_trace() && !w.empty()) ? w.size() : 1;
        for (std::size_t r = 0; r < rotations && !done; ++r) {
            Word rotated = w;
            std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(r), rotated.end());
            for (const auto &rule : rules) {
                if (rule.replacement.mode() != p.mode()) throw ShapeError("rule mode does not match polynomial mode");
                auto m = detail::find_match(rotated, rule, p.mode());
                if (!m) continue;
                NCPolynomial rep = detail::apply_once_to_word(rotated, rule, *m, p.mode());
                for (const auto &[rw, rc] : rep.terms()) out.add_term(rw, rc * c);
                done = true;
                break;
            }
        }
        if (done) {
            changed = true;
        } else {
            out.add_term(w, c);
        }
    }
    if (!changed) return std::nullopt;
    return out;
}

// Rewrites to a fixed point. Exceeding the step bound signals a rule set
// that does not terminate on this input.
inline NCPolynomial substitute(const NCPolynomial &p, const RuleSet &rules, int max_steps = 256)
{
    if (rules.empty()) return p;
    NCPolynomial cur = p;
    for (int step = 0; step < max_steps; ++step) {
        auto next = rewrite_step(cur, rules);
        if (!next) return cur;
        cur = std::move(*next);
    }
    throw NonConfluentError("substitution did not reach a fixed point within " + std::to_string(max_steps)
                            + " steps");
}

inline PolyMatrix substitute(const PolyMatrix &m, const RuleSet &rules, int max_steps = 256)
{
    return m.map([&](const NCPolynomial &p) { return substitute(p, rules, max_steps); });
}

template <typename T>
LaurentSeries<T> substitute(const LaurentSeries<T> &s, const RuleSet &rules, int max_steps = 256)
{
    return s.map([&](const T &c) { return substitute(c, rules, max_steps); });
}

} // namespace laxforge

#endif
