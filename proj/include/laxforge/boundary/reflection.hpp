#ifndef LAXFORGE_BOUNDARY_REFLECTION_HPP
#define LAXFORGE_BOUNDARY_REFLECTION_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <laxforge/boundary/rational_function.hpp>

namespace laxforge::boundary
{

inline const std::string lam = "lam";
inline const std::string mu = "mu";

// r12(z) = P / z.
inline RationalMatrix yang_r(const CPoly &z)
{
    return RatFunc(CPoly(1), z) * RationalMatrix::permutation(2);
}

// K(lam) = [[lam + i xi, i kappa lam], [i kappa lam, -lam + i xi]].
inline RationalMatrix k_matrix(const CPoly &xi, const CPoly &kappa)
{
    CPoly l = CPoly::var(lam);
    CPoly i = CPoly::i();
    return RationalMatrix::from_rows({{l + i * xi, i * kappa * l}, {i * kappa * l, -l + i * xi}});
}

inline RationalMatrix k_matrix_symbolic(const std::string &xi = "xi", const std::string &kappa = "kappa")
{
    return k_matrix(CPoly::var(xi), CPoly::var(kappa));
}

// [r(lam - mu), K1(lam) K2(mu)] + K1(lam) r(lam + mu) K2(mu) - K2(mu) r(lam + mu) K1(lam)
// for a 2x2 K given as a function of lam.
inline RationalMatrix reflection_residual(const RationalMatrix &k)
{
    if (k.size() != 2) throw std::invalid_argument("reflection_residual expects a 2x2 K-matrix");
    auto id = RationalMatrix::identity(2);
    RationalMatrix k1 = kron(k, id);
    RationalMatrix k2 = kron(id, k.substitute(lam, CPoly::var(mu)));
    CPoly l = CPoly::var(lam), m = CPoly::var(mu);
    RationalMatrix rm = yang_r(l - m);
    RationalMatrix rp = yang_r(l + m);
    RationalMatrix kk = k1 * k2;
    return rm * kk - kk * rm + k1 * rp * k2 - k2 * rp * k1;
}

// Ultralocal bracket table {a, b} = c for the commuting field variables.
using BracketTable = std::map<std::pair<std::string, std::string>, GaussRational>;

enum class LaxWhich { V, U };

inline std::string to_string(LaxWhich w)
{
    return w == LaxWhich::V ? "V" : "U";
}

// {u, pi} = {uh, pih} = 1 (time-like) and {u, uh} = 1 (space-like), antisymmetrised.
inline BracketTable bracket_table(LaxWhich which)
{
    BracketTable t;
    auto pair = [&](const std::string &a, const std::string &b) {
        t[{a, b}] = 1;
        t[{b, a}] = -1;
    };
    if (which == LaxWhich::V) {
        pair("u", "pi");
        pair("uh", "pih");
    } else {
        pair("u", "uh");
    }
    return t;
}

// V of the time-like model and U of the space-like one, in lam.
inline RationalMatrix lax_matrix(LaxWhich which)
{
    CPoly l = CPoly::var(lam), half = CPoly(GaussRational(make_rational(1, 2)));
    CPoly u = CPoly::var("u"), uh = CPoly::var("uh"), pi = CPoly::var("pi"), pih = CPoly::var("pih");
    if (which == LaxWhich::V) {
        return RationalMatrix::from_rows(
            {{half * l * l - u * uh, l * uh + pi}, {l * u - pih, -(half * l * l) + u * uh}});
    }
    return RationalMatrix::from_rows({{half * l, uh}, {u, -(half * l)}});
}

inline CPoly partial(const CPoly &p, const std::string &v)
{
    CPoly r;
    for (const auto &[m, c] : p.terms()) {
        auto it = m.find(v);
        if (it == m.end()) continue;
        Monomial d = m;
        int e = it->second;
        if (e == 1) {
            d.erase(v);
        } else {
            d[v] = e - 1;
        }
        r.add_term(d, c * GaussRational(e));
    }
    return r;
}

// delta-coefficient of {A_1(lam), B_2(mu)} for polynomial entries.
inline RationalMatrix poisson_bracket(const RationalMatrix &a, const RationalMatrix &b, const BracketTable &table)
{
    std::size_t d = a.size();
    RationalMatrix r(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t l = 0; l < d; ++l) {
                    CPoly s;
                    for (const auto &[vars, c] : table) {
                        CPoly da = partial(a(i, j).num(), vars.first);
                        if (da.is_zero()) continue;
                        s += da * partial(b(k, l).num(), vars.second) * c;
                    }
                    r(i * d + k, j * d + l) = RatFunc(s);
                }
            }
        }
    }
    return r;
}

class DivisionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct PoissonReport {
    LaxWhich which = LaxWhich::V;
    RationalMatrix bracket;     // {A1(lam), A2(mu)}
    RationalMatrix commutator;  // [P, A1(lam) + A2(mu)], divided by (lam - mu)
    RationalMatrix residual;    // bracket - commutator
    bool antisymmetric = false; // P B(mu, lam) P = -B(lam, mu)
    bool coincident_zero = false; // [P, A1 + A2] vanishes at lam = mu
    bool holds() const { return residual.is_zero() && antisymmetric && coincident_zero; }
};

inline PoissonReport poisson_residual(LaxWhich which)
{
    PoissonReport rep;
    rep.which = which;
    RationalMatrix a = lax_matrix(which);
    RationalMatrix a_mu = a.substitute(lam, CPoly::var(mu));
    auto table = bracket_table(which);
    auto id = RationalMatrix::identity(2);
    auto p = RationalMatrix::permutation(2);
    rep.bracket = poisson_bracket(a, a_mu, table);
    RationalMatrix sum = kron(a, id) + kron(id, a_mu);
    RationalMatrix c = p * sum - sum * p;
    rep.coincident_zero = c.substitute(lam, CPoly::var(mu)).is_zero();
    rep.commutator = RationalMatrix(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            auto div = divide_by_linear(c(i, j).num(), lam, CPoly::var(mu));
            if (!div.exact()) {
                throw DivisionError("[P, A1 + A2] entry (" + std::to_string(i) + "," + std::to_string(j)
                                    + ") is not divisible by lam - mu: remainder " + div.remainder.to_string());
            }
            rep.commutator(i, j) = RatFunc(div.quotient);
        }
    }
    rep.residual = rep.bracket - rep.commutator;
    // Swap the spectral parameters through a temporary name.
    RationalMatrix swapped = rep.bracket.substitute(lam, CPoly::var("nu"))
                                 .substitute(mu, CPoly::var(lam))
                                 .substitute("nu", CPoly::var(mu));
    rep.antisymmetric = (p * swapped * p + rep.bracket).is_zero();
    return rep;
}

} // namespace laxforge::boundary

#endif
