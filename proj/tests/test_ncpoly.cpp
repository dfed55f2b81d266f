#include <catch_amalgamated.hpp>

#include <random>

#include <laxforge/ncpoly/euler.hpp>
#include <laxforge/ncpoly/json.hpp>
#include <laxforge/ncpoly/latex.hpp>
#include <laxforge/ncpoly/parse.hpp>
#include <laxforge/ncpoly/substitute.hpp>

using namespace laxforge;

namespace
{

NCPolynomial S(const char *text) { return parse_polynomial(text, Mode::scalar); }
NCPolynomial Mx(const char *text) { return parse_polynomial(text, Mode::matrix); }

FieldAtom U = atom(Base::u), UH = atom(Base::uh), PI = atom(Base::pi), PIH = atom(Base::pih);

// Random chained word in matrix mode starting on rows `r`, ending on cols `c`.
NCPolynomial random_block(std::mt19937 &rng, Dim r, Dim c, int terms, int max_len)
{
    NCPolynomial p(Mode::matrix, {r, c});
    std::uniform_int_distribution<int> coeff(-3, 3), len(1, max_len), dt(0, 2), pick(0, 1);
    for (int k = 0; k < terms; ++k) {
        Word w;
        Dim cur = r;
        int n = len(rng);
        for (int j = 0; j < n || cur != c; ++j) {
            if (j > 8) break;
            // From rows M: u or pih (MxN). From rows N: uh or pi (NxM).
            Base b = cur == Dim::M ? (pick(rng) ? Base::u : Base::pih) : (pick(rng) ? Base::uh : Base::pi);
            w.push_back(atom(b, dt(rng)));
            cur = cur == Dim::M ? Dim::N : Dim::M;
            if (j + 1 >= n && cur == c) break;
        }
        if (cur != c) continue;
        p.add_term(w, GaussRational(coeff(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("nc_mul concatenates in matrix mode and sorts in scalar mode", "[ncpoly]")
{
    auto uuh = NCPolynomial::from_atom(Mode::matrix, U) * NCPolynomial::from_atom(Mode::matrix, UH);
    REQUIRE(uuh.shape() == Shape{Dim::M, Dim::M});
    REQUIRE(uuh.terms().begin()->first == Word{U, UH});

    auto a = NCPolynomial::from_atom(Mode::scalar, UH) * NCPolynomial::from_atom(Mode::scalar, U);
    auto b = NCPolynomial::from_atom(Mode::scalar, U) * NCPolynomial::from_atom(Mode::scalar, UH);
    REQUIRE(a == b);

    REQUIRE(Mx("(u + pih) * uh") == Mx("u*uh + pih*uh"));
    REQUIRE_THROWS_AS(NCPolynomial::from_atom(Mode::matrix, U) * NCPolynomial::from_atom(Mode::matrix, U), ShapeError);
}

TEST_CASE("differentiate_t follows the Leibniz rule", "[ncpoly]")
{
    REQUIRE(S("u").differentiate_t() == S("u_t"));
    REQUIRE(Mx("u*uh").differentiate_t() == Mx("u_t*uh + u*uh_t"));
    REQUIRE(PolyMatrix::constant_diagonal(Mode::matrix, {1, -1}).differentiate_t().is_zero());

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_block(rng, Dim::M, Dim::N, 3, 3);
        auto q = random_block(rng, Dim::N, Dim::N, 3, 4);
        REQUIRE((p * q).differentiate_t() == p.differentiate_t() * q + p * q.differentiate_t());
    }
}

TEST_CASE("shape chaining survives random products and sums", "[ncpoly]")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_block(rng, Dim::M, Dim::N, 4, 3);
        auto q = random_block(rng, Dim::N, Dim::M, 4, 3);
        auto r = p * q + random_block(rng, Dim::M, Dim::M, 2, 4);
        REQUIRE(r.shape() == Shape{Dim::M, Dim::M});
        for (const auto &[w, c] : r.terms()) {
            for (std::size_t k = 0; k + 1 < w.size(); ++k) {
                REQUIRE(base_shape(w[k].base, Mode::matrix).cols == base_shape(w[k + 1].base, Mode::matrix).rows);
            }
        }
    }
}

TEST_CASE("scalar mode is the N=M=1 image of matrix mode", "[ncpoly]")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_block(rng, Dim::M, Dim::N, 3, 3);
        auto q = random_block(rng, Dim::N, Dim::M, 3, 3);
        auto s = random_block(rng, Dim::M, Dim::M, 3, 4);
        auto lhs = (p * q + s).differentiate_t().to_scalar();
        auto rhs = (p.to_scalar() * q.to_scalar() + s.to_scalar()).differentiate_t();
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("substitute rewrites to a fixed point", "[ncpoly]")
{
    RuleSet pi_rule{Rule(PI, S("uh_x"))};
    auto s = parse_series("lam*uh + pi", Mode::scalar);
    auto r = substitute(s, pi_rule);
    REQUIRE(r == parse_series("lam*uh + uh_x", Mode::scalar));

    RuleSet k_rule{Rule(Word{U, atom(Base::K11)}, Mx("pih"))};
    REQUIRE(substitute(Mx("uh*u*K11"), k_rule) == Mx("uh*pih"));

    REQUIRE(substitute(S("u*uh + pi"), RuleSet{}) == S("u*uh + pi"));

    // Derivatives of a single-atom pattern are rewritten as derivatives of the replacement.
    REQUIRE(substitute(S("pi_t"), pi_rule) == S("uh_x_t"));

    RuleSet loop{Rule(U, S("u + u"))};
    REQUIRE_THROWS_AS(substitute(S("u"), loop, 16), NonConfluentError);
}

TEST_CASE("total t-derivative test with homotopy witness", "[ncpoly]")
{
    auto r1 = is_total_t_derivative(S("u_t*uh + u*uh_t"));
    REQUIRE(r1.is_total);
    REQUIRE(*r1.antiderivative == S("u*uh"));

    auto r2 = is_total_t_derivative(S("u*pi"));
    REQUIRE_FALSE(r2.is_total);
    REQUIRE_FALSE(r2.obstructions.empty());

    auto r3 = is_total_t_derivative(S("u_t_t*uh - u*uh_t_t"));
    REQUIRE(r3.is_total);
    REQUIRE(*r3.antiderivative == S("u_t*uh - u*uh_t"));

    REQUIRE_THROWS_AS(is_total_t_derivative(Mx("u*uh")), std::invalid_argument);

    auto tr = Mx("u_t*uh + u*uh_t").trace();
    auto r4 = is_total_t_derivative(tr);
    REQUIRE(r4.is_total);
    REQUIRE(*r4.antiderivative == Mx("u*uh").trace());

    // (1/2) d/dt tr(u uh u uh), written with one representative per rotation class.
    auto quartic = Mx("u_t*uh*u*uh").trace() + Mx("uh_t*u*uh*u").trace();
    auto r5 = is_total_t_derivative(quartic);
    REQUIRE(r5.is_total);
    REQUIRE(*r5.antiderivative == Mx("u*uh*u*uh").trace() * GaussRational(make_rational(1, 2)));
    REQUIRE_FALSE(is_total_t_derivative(Mx("u_t*uh*u*uh").trace()).is_total);
    REQUIRE_FALSE(is_total_t_derivative(Mx("u*pi*pih*uh").trace()).is_total);
}

TEST_CASE("series_invert and series_log", "[ncpoly]")
{
    auto one = MatrixSeries::monomial(PolyMatrix::identity(Mode::scalar), 0);
    REQUIRE(series_invert(one, 6).agrees_with(one));

    PolyMatrix w1 = PolyMatrix::from_blocks(Mode::scalar, S("0"), S("-uh"), S("u"), S("0"));
    MatrixSeries s = one + MatrixSeries::monomial(w1, -1);
    auto inv = series_invert(s, 4);
    MatrixSeries expect = one - MatrixSeries::monomial(w1, -1) + MatrixSeries::monomial(w1 * w1, -2)
                          - MatrixSeries::monomial(w1 * w1 * w1, -3) + MatrixSeries::monomial(w1 * w1 * w1 * w1, -4);
    REQUIRE(inv.agrees_with(expect));
    REQUIRE((s * inv).agrees_with(one));
    REQUIRE(series_invert(inv).agrees_with(s));

    REQUIRE_THROWS_AS(series_invert(MatrixSeries::monomial(w1, 0), 3), InvertibilityError);

    auto unit = ScalarSeries::monomial(S("1"), 0);
    REQUIRE(series_log(unit, 5).value.is_zero());

    auto a = S("u*uh");
    auto sl = series_log(unit + ScalarSeries::monomial(a, -1), 3);
    ScalarSeries mercator = ScalarSeries::monomial(a, -1) - ScalarSeries::monomial(a * a, -2) * GaussRational(make_rational(1, 2))
                            + ScalarSeries::monomial(a * a * a, -3) * GaussRational(make_rational(1, 3));
    REQUIRE(sl.value.agrees_with(mercator));
}

TEST_CASE("series identities on random inputs", "[ncpoly]")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-2, 2);
    const char *pool[] = {"u", "uh", "pi", "pih", "u_t", "u*uh", "pi*pih"};
    std::uniform_int_distribution<int> pick(0, 6);
    const int order = 5;
    for (int trial = 0; trial < 10; ++trial) {
        ScalarSeries s = ScalarSeries::monomial(S("1"), 0);
        for (int k = 1; k <= 3; ++k) s += ScalarSeries::monomial(S(pool[pick(rng)]) * GaussRational(c(rng)), -k);
        s = s * GaussRational(c(rng) == 0 ? 3 : 2);

        auto inv = series_invert(s, order);
        REQUIRE((s * inv).agrees_with(ScalarSeries::monomial(S("1"), 0)));
        REQUIRE(series_invert(inv).agrees_with(s));

        // exp(log s) by brute composition.
        auto lg = series_log(s, order);
        ScalarSeries e = ScalarSeries::monomial(S("1"), 0);
        ScalarSeries term = e;
        for (int m = 1; m <= order; ++m) {
            term = term * lg.value * GaussRational(make_rational(1, m));
            term.truncate(order);
            e += term;
        }
        e.truncate(order);
        ScalarSeries scaled = s * (GaussRational(1) / lg.prefix.lead);
        REQUIRE(e.agrees_with(scaled));
    }
}

TEST_CASE("truncated coefficients cannot be read", "[ncpoly]")
{
    auto s = series_invert(ScalarSeries::monomial(S("1"), 0) + ScalarSeries::monomial(S("u"), -1), 3);
    REQUIRE(s.truncation() == 3);
    REQUIRE_NOTHROW(s[3]);
    REQUIRE_THROWS_AS(s[4], TruncationError);
}

TEST_CASE("parser", "[ncpoly]")
{
    REQUIRE(S("2*u*uh - u*uh") == S("uh*u"));
    REQUIRE(S("u^2*uh") == S("u*u*uh"));
    REQUIRE(S("(1/2)*u") == S("u/2"));
    REQUIRE(S("i*u").coefficient(Word{U}) == GaussRational::i());
    REQUIRE(Mx("u*uh*u - u_t").shape() == Shape{Dim::M, Dim::N});
    REQUIRE(Mx("u*uh + 1").constant_term() == GaussRational(1));
    REQUIRE(S("u_x_t").terms().begin()->first[0] == atom(Base::u, 1, 1));
    REQUIRE(S("u_x3").terms().begin()->first[0] == atom(Base::u, 0, 1, 3));
    REQUIRE_THROWS_AS(Mx("u*u"), ParseError);
    REQUIRE_THROWS_AS(Mx("u + 1"), ParseError);
    REQUIRE_THROWS_AS(S("u +"), ParseError);
    REQUIRE_THROWS_AS(S("v"), ParseError);
    REQUIRE_THROWS_AS(S("lam*u"), ParseError);
    auto s = parse_series("lam^2/2 - u*uh", Mode::scalar);
    REQUIRE(s.coeff(2) == S("1/2"));
    REQUIRE(s.coeff(0) == S("-u*uh"));
}

TEST_CASE("text and JSON round trips", "[ncpoly]")
{
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_block(rng, Dim::M, Dim::N, 4, 3) * GaussRational(make_rational(1, 2), make_rational(-3, 4));
        REQUIRE(parse_polynomial(p.to_string(), Mode::matrix) == p);
        REQUIRE(polynomial_from_json(Json::parse(to_json(p).dump())) == p);
    }
    auto tr = Mx("u*pi*pih*uh - pih*uh").trace();
    REQUIRE(polynomial_from_json(to_json(tr)) == tr);

    PolyMatrix m = PolyMatrix::from_blocks(Mode::matrix, Mx("uh*u"), Mx("uh_t"), Mx("-u"), Mx("u*uh"));
    REQUIRE(matrix_from_json(to_json(m)) == m);

    MatrixSeries ms = MatrixSeries::monomial(m, 1) + MatrixSeries::monomial(PolyMatrix::identity(Mode::matrix), 0);
    ms.truncate(4);
    REQUIRE(series_from_json<PolyMatrix>(Json::parse(to_json(ms).dump())) == ms);
    REQUIRE_THROWS_AS(polynomial_from_json(Json::parse(R"({"mode":"scalar"})")), SchemaError);
}

TEST_CASE("latex emission", "[ncpoly]")
{
    REQUIRE(to_latex(S("u*uh - pih*uh/2")) == "u \\hat{u} - \\frac{1}{2} \\hat{u} \\hat{\\pi}");
    REQUIRE(to_latex(S("u*u*uh_t")) == "u^{2} \\hat{u}_{t}");
    REQUIRE(to_latex(parse_series("lam^2 - u*uh", Mode::scalar)) == "\\lambda^{2} - u \\hat{u}");
}
