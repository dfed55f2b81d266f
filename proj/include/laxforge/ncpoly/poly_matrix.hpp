#ifndef LAXFORGE_NCPOLY_POLY_MATRIX_HPP
#define LAXFORGE_NCPOLY_POLY_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/ncpoly/polynomial.hpp>

namespace laxforge
{

// Block matrix of polynomials; entry (i, j) has shape row_dims[i] x col_dims[j].
class PolyMatrix
{
public:
    PolyMatrix() = default;

    PolyMatrix(Mode mode, std::vector<Dim> row_dims, std::vector<Dim> col_dims)
        : mode_(mode), rows_(std::move(row_dims)), cols_(std::move(col_dims))
    {
        if (mode_ == Mode::scalar) {
            for (auto &d : rows_) d = Dim::one;
            for (auto &d : cols_) d = Dim::one;
        }
        entries_.reserve(rows_.size());
        for (auto r : rows_) {
            std::vector<NCPolynomial> row;
            row.reserve(cols_.size());
            for (auto c : cols_) row.emplace_back(mode_, Shape{r, c});
            entries_.push_back(std::move(row));
        }
    }

    // The 2x2 block layout (N, M) of the model; 1x1 blocks in scalar mode.
    static std::vector<Dim> model_dims(Mode mode)
    {
        if (mode == Mode::scalar) return {Dim::one, Dim::one};
        return {Dim::N, Dim::M};
    }

    static PolyMatrix zero(Mode mode) { return PolyMatrix(mode, model_dims(mode), model_dims(mode)); }

    static PolyMatrix identity(Mode mode, const std::vector<Dim> &dims)
    {
        PolyMatrix m(mode, dims, dims);
        for (std::size_t k = 0; k < dims.size(); ++k) m.entries_[k][k] = NCPolynomial::constant(mode, {m.rows_[k], m.rows_[k]}, 1);
        return m;
    }

    static PolyMatrix identity(Mode mode) { return identity(mode, model_dims(mode)); }

    // Block diagonal with constant entries c_k times the identity block.
    static PolyMatrix constant_diagonal(Mode mode, const std::vector<GaussRational> &diag)
    {
        auto dims = model_dims(mode);
        PolyMatrix m(mode, dims, dims);
        for (std::size_t k = 0; k < diag.size(); ++k) {
            m.entries_[k][k] = NCPolynomial::constant(mode, {m.rows_[k], m.rows_[k]}, diag[k]);
        }
        return m;
    }

    // Builds a 2x2 model-layout matrix from four entries.
    static PolyMatrix from_blocks(Mode mode, NCPolynomial a, NCPolynomial b, NCPolynomial c, NCPolynomial d)
    {
        PolyMatrix m = zero(mode);
        m.set(0, 0, std::move(a));
        m.set(0, 1, std::move(b));
        m.set(1, 0, std::move(c));
        m.set(1, 1, std::move(d));
        return m;
    }

    Mode mode() const { return mode_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_.size(); }
    const std::vector<Dim> &row_dims() const { return rows_; }
    const std::vector<Dim> &col_dims() const { return cols_; }

    const NCPolynomial &operator()(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }

    void set(std::size_t i, std::size_t j, NCPolynomial p)
    {
        Shape want{rows_.at(i), cols_.at(j)};
        if (p.mode() != mode_) throw ShapeError("entry mode does not match matrix mode");
        if (p.is_zero() && p.shape() != want) p = NCPolynomial(mode_, want);
        if (p.shape() != want || p.is_trace()) {
            throw ShapeError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") expects shape "
                             + want.to_string() + ", got " + p.shape().to_string());
        }
        entries_[i][j] = std::move(p);
    }

    bool is_zero() const
    {
        for (const auto &row : entries_) {
            for (const auto &e : row) {
                if (!e.is_zero()) return false;
            }
        }
        return true;
    }

    bool is_constant() const
    {
        for (const auto &row : entries_) {
            for (const auto &e : row) {
                if (!e.is_constant()) return false;
            }
        }
        return true;
    }

    PolyMatrix &operator+=(const PolyMatrix &o)
    {
        check_same_layout(o);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) entries_[i][j] += o.entries_[i][j];
        }
        return *this;
    }

    PolyMatrix &operator-=(const PolyMatrix &o)
    {
        check_same_layout(o);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) entries_[i][j] -= o.entries_[i][j];
        }
        return *this;
    }

    PolyMatrix &operator*=(const GaussRational &c)
    {
        for (auto &row : entries_) {
            for (auto &e : row) e *= c;
        }
        return *this;
    }

    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix &b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix &b) { return a -= b; }
    friend PolyMatrix operator*(PolyMatrix a, const GaussRational &c) { return a *= c; }
    friend PolyMatrix operator*(const GaussRational &c, PolyMatrix a) { return a *= c; }
    friend PolyMatrix operator-(PolyMatrix a) { return a *= GaussRational(-1); }

    friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b)
    {
        if (a.mode_ != b.mode_) throw ShapeError("mixing scalar and matrix mode matrices");
        if (a.cols_ != b.rows_) throw ShapeError("block layouts do not chain in matrix product");
        PolyMatrix r(a.mode_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                NCPolynomial acc(a.mode_, {a.rows_[i], b.cols_[j]});
                for (std::size_t k = 0; k < a.cols(); ++k) {
                    if (a.entries_[i][k].is_zero() || b.entries_[k][j].is_zero()) continue;
                    acc += a.entries_[i][k] * b.entries_[k][j];
                }
                r.entries_[i][j] = std::move(acc);
            }
        }
        return r;
    }

    friend bool operator==(const PolyMatrix &a, const PolyMatrix &b)
    {
        return a.mode_ == b.mode_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const PolyMatrix &a, const PolyMatrix &b) { return !(a == b); }

    template <typename F>
    PolyMatrix map(F &&f) const
    {
        PolyMatrix r(mode_, rows_, cols_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) r.set(i, j, f(entries_[i][j]));
        }
        return r;
    }

    PolyMatrix differentiate_t() const
    {
        return map([](const NCPolynomial &p) { return p.differentiate_t(); });
    }

    PolyMatrix differentiate_x(int flow) const
    {
        return map([flow](const NCPolynomial &p) { return p.differentiate_x(flow); });
    }

    PolyMatrix to_scalar() const
    {
        PolyMatrix r(Mode::scalar, rows_, cols_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) r.set(i, j, entries_[i][j].to_scalar());
        }
        return r;
    }

    // Entry-wise transpose; only meaningful when entries commute.
    PolyMatrix transpose() const
    {
        if (mode_ != Mode::scalar) throw ShapeError("transpose is only defined in scalar mode");
        PolyMatrix r(mode_, cols_, rows_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) r.set(j, i, entries_[i][j]);
        }
        return r;
    }

    // Diagonal / off-diagonal parts of a square block matrix.
    PolyMatrix diagonal_part() const
    {
        PolyMatrix r(mode_, rows_, cols_);
        for (std::size_t k = 0; k < rows() && k < cols(); ++k) r.set(k, k, entries_[k][k]);
        return r;
    }

    PolyMatrix off_diagonal_part() const
    {
        PolyMatrix r = *this;
        for (std::size_t k = 0; k < rows() && k < cols(); ++k) r.set(k, k, NCPolynomial(mode_, {rows_[k], cols_[k]}));
        return r;
    }

    bool is_diagonal() const { return off_diagonal_part().is_zero(); }
    bool is_off_diagonal() const { return diagonal_part().is_zero(); }

    // Constant scalar multiple of the identity: returns the scalar when so.
    std::optional<GaussRational> identity_multiple() const
    {
        if (rows_ != cols_ || !is_constant() || !is_diagonal()) return std::nullopt;
        GaussRational c = entries_[0][0].constant_term();
        for (std::size_t k = 1; k < rows(); ++k) {
            if (entries_[k][k].constant_term() != c) return std::nullopt;
        }
        return c;
    }

    bool contains_base(Base b) const
    {
        for (const auto &row : entries_) {
            for (const auto &e : row) {
                if (e.contains_base(b)) return true;
            }
        }
        return false;
    }

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < rows(); ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols(); ++j) {
                if (j) s += ", ";
                s += entries_[i][j].to_string();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same_layout(const PolyMatrix &o) const
    {
        if (mode_ != o.mode_ || rows_ != o.rows_ || cols_ != o.cols_) {
            throw ShapeError("block layouts differ in matrix sum");
        }
    }

    Mode mode_ = Mode::scalar;
    std::vector<Dim> rows_;
    std::vector<Dim> cols_;
    std::vector<std::vector<NCPolynomial>> entries_;
};

// Commutator AB - BA.
inline PolyMatrix commutator(const PolyMatrix &a, const PolyMatrix &b)
{
    return a * b - b * a;
}

} // namespace laxforge

#endif
