#ifndef LAXFORGE_NCPOLY_POLYNOMIAL_HPP
#define LAXFORGE_NCPOLY_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/ncpoly/atom.hpp>
#include <laxforge/rational.hpp>

namespace laxforge
{

// Plain polynomials are block-valued. A trace polynomial is the formal trace
// of a square block polynomial: its words are equivalence classes under
// cyclic rotation and it is scalar-valued.
enum class Kind : std::uint8_t { plain, trace };

namespace detail
{

inline Shape word_shape(const Word &w, Mode mode)
{
    Shape first = base_shape(w.front().base, mode);
    Shape last = base_shape(w.back().base, mode);
    return {first.rows, last.cols};
}

inline void check_chain(const Word &w, Mode mode)
{
    if (mode == Mode::scalar) {
        for (const auto &a : w) {
            base_shape(a.base, mode);
        }
        return;
    }
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        if (base_shape(w[k].base, mode).cols != base_shape(w[k + 1].base, mode).rows) {
            throw ShapeError("word factors do not chain: " + w[k].to_string() + " * " + w[k + 1].to_string());
        }
    }
}

// Lexicographically least rotation.
inline Word min_rotation(const Word &w)
{
    Word best = w;
    Word cur = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

} // namespace detail

class NCPolynomial
{
public:
    using TermMap = std::map<Word, GaussRational>;

    NCPolynomial() = default;

    NCPolynomial(Mode mode, Shape shape, Kind kind = Kind::plain) : mode_(mode), shape_(shape), kind_(kind)
    {
        if (mode_ == Mode::scalar) {
            shape_ = scalar_shape;
            kind_ = Kind::plain;
        }
        if (kind_ == Kind::trace) shape_ = scalar_shape;
    }

    static NCPolynomial zero(Mode mode, Shape shape) { return NCPolynomial(mode, shape); }

    // c times the identity block of the given (square) shape.
    static NCPolynomial constant(Mode mode, Shape shape, const GaussRational &c)
    {
        NCPolynomial p(mode, shape);
        if (p.shape_.rows != p.shape_.cols) {
            throw ShapeError("identity requires a square block, got " + p.shape_.to_string());
        }
        p.add_term({}, c);
        return p;
    }

    static NCPolynomial identity(Mode mode, Dim d) { return constant(mode, {d, d}, 1); }

    static NCPolynomial from_atom(Mode mode, const FieldAtom &a, const GaussRational &c = 1)
    {
        NCPolynomial p(mode, base_shape(a.base, mode));
        p.add_term({a}, c);
        return p;
    }

    static NCPolynomial from_word(Mode mode, Word w, const GaussRational &c = 1)
    {
        if (w.empty()) throw ShapeError("empty word has no intrinsic shape");
        detail::check_chain(w, mode);
        NCPolynomial p(mode, detail::word_shape(w, mode));
        p.add_term(std::move(w), c);
        return p;
    }

    Mode mode() const { return mode_; }
    Shape shape() const { return shape_; }
    Kind kind() const { return kind_; }
    bool is_trace() const { return kind_ == Kind::trace; }

    const TermMap &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of the empty word.
    GaussRational constant_term() const
    {
        auto it = terms_.find(Word{});
        return it == terms_.end() ? GaussRational{} : it->second;
    }

    GaussRational coefficient(const Word &w) const
    {
        auto it = terms_.find(normalize_word(w));
        return it == terms_.end() ? GaussRational{} : it->second;
    }

    // Adds c*w, normalizing w for the polynomial's mode and kind.
    void add_term(Word w, const GaussRational &c)
    {
        if (c.is_zero()) return;
        if (!w.empty()) {
            detail::check_chain(w, mode_);
            if (kind_ == Kind::plain) {
                if (detail::word_shape(w, mode_) != shape_) {
                    throw ShapeError("term shape " + detail::word_shape(w, mode_).to_string()
                                     + " does not match polynomial shape " + shape_.to_string());
                }
            } else if (mode_ == Mode::matrix) {
                auto ws = detail::word_shape(w, mode_);
                if (ws.rows != ws.cols) throw ShapeError("trace of a non-square word");
            }
        } else if (kind_ == Kind::plain && shape_.rows != shape_.cols) {
            throw ShapeError("identity term in a non-square polynomial");
        }
        w = normalize_word(std::move(w));
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    NCPolynomial &operator+=(const NCPolynomial &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_term(w, c);
        return *this;
    }

    NCPolynomial &operator-=(const NCPolynomial &o)
    {
        check_compatible(o);
        for (const auto &[w, c] : o.terms_) add_term(w, -c);
        return *this;
    }

    NCPolynomial &operator*=(const GaussRational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[w, v] : terms_) v *= c;
        return *this;
    }

    friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial &b) { return a += b; }
    friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial &b) { return a -= b; }
    friend NCPolynomial operator*(NCPolynomial a, const GaussRational &c) { return a *= c; }
    friend NCPolynomial operator*(const GaussRational &c, NCPolynomial a) { return a *= c; }
    friend NCPolynomial operator-(NCPolynomial a) { return a *= GaussRational(-1); }

    // Block product. Word concatenation in matrix mode, sorted merge in scalar mode.
    friend NCPolynomial operator*(const NCPolynomial &p, const NCPolynomial &q) { return nc_mul(p, q); }

    friend NCPolynomial nc_mul(const NCPolynomial &p, const NCPolynomial &q)
    {
        if (p.mode_ != q.mode_) throw ShapeError("mixing scalar and matrix mode polynomials");
        if (p.is_trace() || q.is_trace()) {
            // Only products with central constants are representable.
            const NCPolynomial &t = p.is_trace() ? p : q;
            const NCPolynomial &o = p.is_trace() ? q : p;
            if (o.is_trace() || !o.is_constant()) {
                throw ShapeError("product involving a formal trace is only defined with constants");
            }
            return t * o.constant_term();
        }
        if (p.shape_.cols != q.shape_.rows) {
            throw ShapeError("shape mismatch in product: " + p.shape_.to_string() + " * " + q.shape_.to_string());
        }
        NCPolynomial r(p.mode_, {p.shape_.rows, q.shape_.cols});
        for (const auto &[wp, cp] : p.terms_) {
            for (const auto &[wq, cq] : q.terms_) {
                Word w;
                w.reserve(wp.size() + wq.size());
                w.insert(w.end(), wp.begin(), wp.end());
                w.insert(w.end(), wq.begin(), wq.end());
                r.add_term(std::move(w), cp * cq);
            }
        }
        return r;
    }

    friend bool operator==(const NCPolynomial &a, const NCPolynomial &b)
    {
        return a.mode_ == b.mode_ && a.shape_ == b.shape_ && a.kind_ == b.kind_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const NCPolynomial &a, const NCPolynomial &b) { return !(a == b); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    // Leibniz rule along t; boundary constants are annihilated.
    NCPolynomial differentiate_t() const
    {
        NCPolynomial r(mode_, shape_, kind_);
        for (const auto &[w, c] : terms_) {
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (is_parameter(w[k].base)) continue;
                Word d = w;
                d[k] = d[k].t_derivative();
                r.add_term(std::move(d), c);
            }
        }
        return r;
    }

    NCPolynomial differentiate_t(int order) const
    {
        NCPolynomial r = *this;
        for (int k = 0; k < order; ++k) r = r.differentiate_t();
        return r;
    }

    // Formal derivative along x_flow: every atom acquires an x-derivative.
    NCPolynomial differentiate_x(int flow) const
    {
        NCPolynomial r(mode_, shape_, kind_);
        for (const auto &[w, c] : terms_) {
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (is_parameter(w[k].base)) continue;
                Word d = w;
                d[k] = d[k].x_derivative(flow);
                r.add_term(std::move(d), c);
            }
        }
        return r;
    }

    // Formal trace of a square block polynomial.
    NCPolynomial trace() const
    {
        if (mode_ == Mode::scalar || kind_ == Kind::trace) return *this;
        if (shape_.rows != shape_.cols) throw ShapeError("trace of a non-square block");
        NCPolynomial r(mode_, scalar_shape, Kind::trace);
        for (const auto &[w, c] : terms_) r.add_term(w, c);
        return r;
    }

    // Homomorphism to the commutative specialization N = M = 1.
    NCPolynomial to_scalar() const
    {
        NCPolynomial r(Mode::scalar, scalar_shape);
        for (const auto &[w, c] : terms_) r.add_term(w, c);
        return r;
    }

    // Applies f to every coefficient; zero results are dropped.
    template <typename F>
    NCPolynomial map_coefficients(F &&f) const
    {
        NCPolynomial r(mode_, shape_, kind_);
        for (const auto &[w, c] : terms_) r.add_term(w, f(c));
        return r;
    }

    bool contains_base(Base b) const
    {
        for (const auto &[w, c] : terms_) {
            for (const auto &a : w) {
                if (a.base == b) return true;
            }
        }
        return false;
    }

    bool contains_x_derivatives() const
    {
        for (const auto &[w, c] : terms_) {
            for (const auto &a : w) {
                if (a.dx > 0) return true;
            }
        }
        return false;
    }

    std::set<FieldAtom> atoms() const
    {
        std::set<FieldAtom> s;
        for (const auto &[w, c] : terms_) s.insert(w.begin(), w.end());
        return s;
    }

    // Plain-text form in the expression grammar of the parser.
    std::string to_string() const
    {
        std::string body;
        if (terms_.empty()) {
            body = "0";
        } else {
            bool first = true;
            for (const auto &[w, c] : terms_) {
                body += term_to_string(w, c, first);
                first = false;
            }
        }
        return kind_ == Kind::trace ? "tr(" + body + ")" : body;
    }

    friend std::ostream &operator<<(std::ostream &os, const NCPolynomial &p) { return os << p.to_string(); }

    Word normalize_word(Word w) const
    {
        if (w.size() < 2) return w;
        if (mode_ == Mode::scalar) {
            std::sort(w.begin(), w.end());
        } else if (kind_ == Kind::trace) {
            w = detail::min_rotation(w);
        }
        return w;
    }

private:
    void check_compatible(const NCPolynomial &o) const
    {
        if (mode_ != o.mode_) throw ShapeError("mixing scalar and matrix mode polynomials");
        if (kind_ != o.kind_) throw ShapeError("adding a formal trace to a block polynomial");
        if (shape_ != o.shape_) {
            throw ShapeError("shape mismatch in sum: " + shape_.to_string() + " + " + o.shape_.to_string());
        }
    }

    static std::string term_to_string(const Word &w, const GaussRational &c, bool first)
    {
        std::string s;
        GaussRational mag = c;
        bool negative = false;
        if (c.is_real() && sgn(c.re()) < 0) {
            negative = true;
            mag = -c;
        } else if (sgn(c.re()) == 0 && sgn(c.im()) < 0) {
            negative = true;
            mag = -c;
        }
        if (first) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        std::string coeff;
        if (!mag.is_one() || w.empty()) {
            coeff = mag.to_string();
            if (!mag.is_real() && sgn(mag.re()) != 0) coeff = "(" + coeff + ")";
        }
        s += coeff;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (!coeff.empty() || k > 0) s += "*";
            s += w[k].to_string();
        }
        return s;
    }

    Mode mode_ = Mode::scalar;
    Shape shape_ = scalar_shape;
    Kind kind_ = Kind::plain;
    TermMap terms_;
};

} // namespace laxforge

#endif
