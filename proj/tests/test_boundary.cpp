#include <catch_amalgamated.hpp>

#include <laxforge/boundary.hpp>
#include <laxforge/cli/tables.hpp>

using namespace laxforge;
using namespace laxforge::boundary;

namespace
{

const std::string golden_dir = LAXFORGE_GOLDEN_DIR;

NCPolynomial S(const char *text) { return parse_polynomial(text, Mode::scalar); }

CPoly num(long n) { return CPoly(GaussRational(n)); }

} // namespace

TEST_CASE("rational functions in lam and mu", "[boundary]")
{
    CPoly lam = CPoly::var(boundary::lam), mu = CPoly::var(boundary::mu);
    auto d = divide_by_linear(lam * lam - mu * mu, boundary::lam, mu);
    CHECK(d.exact());
    CHECK(d.quotient == lam + mu);
    CHECK_FALSE(divide_by_linear(lam * lam + num(1), boundary::lam, mu).exact());
    RatFunc a(lam, lam - mu), b(mu, lam - mu);
    CHECK(a - b == RatFunc(num(1)));
    CHECK(RatFunc(lam * mu, lam) == RatFunc(mu));
}

TEST_CASE("symbolic K solves the reflection equation", "[boundary]")
{
    CHECK(reflection_residual(k_matrix_symbolic()).is_zero());
    CHECK(reflection_residual(k_matrix_symbolic("xip", "kappap")).is_zero());
}

TEST_CASE("identity and diagonal K solve the reflection equation", "[boundary]")
{
    CHECK(reflection_residual(RationalMatrix::identity(2)).is_zero());
    CHECK(reflection_residual(k_matrix(CPoly::var("xi"), num(0))).is_zero());
    CHECK(reflection_residual(k_matrix(num(3), num(2))).is_zero());
}

TEST_CASE("K = 1 + lam M needs M^2 proportional to 1", "[boundary]")
{
    CPoly lam = CPoly::var(boundary::lam);
    // K = 1 + lam M solves it when M^2 is a multiple of 1; M = diag(1, 2) is not.
    auto nilpotent = RationalMatrix::from_rows({{RatFunc(num(1)), RatFunc(lam)}, {RatFunc(num(0)), RatFunc(num(1))}});
    CHECK(reflection_residual(nilpotent).is_zero());
    auto k = RationalMatrix::from_rows({{RatFunc(num(1) + lam), RatFunc(num(0))}, {RatFunc(num(0)), RatFunc(num(1) + lam * num(2))}});
    CHECK_FALSE(reflection_residual(k).is_zero());
    auto k2 = k_matrix_symbolic();
    k2(0, 1) = k2(0, 1) + RatFunc(num(1));
    CHECK_FALSE(reflection_residual(k2).is_zero());
}

TEST_CASE("V and U obey the linear Poisson algebra", "[boundary]")
{
    for (LaxWhich which : {LaxWhich::V, LaxWhich::U}) {
        auto rep = poisson_residual(which);
        INFO(to_string(which));
        CHECK(rep.residual.is_zero());
        CHECK(rep.antisymmetric);
        CHECK(rep.coincident_zero);
        CHECK(rep.holds());
    }
}

TEST_CASE("the Poisson check sees a wrong bracket", "[boundary]")
{
    RationalMatrix a1 = lax_matrix(LaxWhich::V);
    RationalMatrix a2 = a1.substitute(boundary::lam, CPoly::var(boundary::mu));
    BracketTable swapped = bracket_table(LaxWhich::U);
    RationalMatrix b = poisson_bracket(a1, a2, swapped);
    RationalMatrix right = poisson_bracket(a1, a2, bracket_table(LaxWhich::V));
    CHECK_FALSE((b - right).is_zero());
}

TEST_CASE("open charges reproduce the boundary term at t = tau", "[boundary][golden]")
{
    auto ex = open_charge_expansion({}, 2);
    auto res = golden::compare(golden::load_table(golden_dir + "/boundary_charges.json"), cli::boundary_objects(ex));
    CHECK(res.find("bulk")->ok());
    CHECK(res.find("H_plus")->ok());
    CHECK(ex.plus[1] == S("u^2/2 + xip*kinvp*u - i*kinvp*pih"));
    CHECK(ex.plus[0].is_zero());
    CHECK(ex.minus[0].is_zero());
}

TEST_CASE("open charge at t = -tau from the literal W- definition", "[boundary][golden]")
{
    auto ex = open_charge_expansion({}, 2);
    CHECK(ex.minus[1] == S("-u*uh + uh^2/2 + xim*kinvm*uh + i*kinvm*pi"));
    auto res = golden::compare(golden::load_table(golden_dir + "/boundary_charges.json"), cli::boundary_objects(ex));
    CHECK(res.find("H_minus")->status == "mismatch");
}

TEST_CASE("odd orders of the open charge vanish", "[boundary]")
{
    auto ex = open_charge_expansion({}, 4);
    CHECK(ex.plus[2].is_zero());
    CHECK(ex.minus[2].is_zero());
    CHECK(ex.bulk[1] == charges(ChargeKind::H, 2).back().density);
}

TEST_CASE("numeric boundary parameters", "[boundary]")
{
    BoundaryParams p;
    p.xi_plus = GaussRational(3);
    p.kappa_plus = GaussRational(2);
    auto ex = open_charge_expansion(p, 2);
    CHECK(ex.plus[1] == S("u^2/2 + 3/2*u - i/2*pih"));
    BoundaryParams bad;
    bad.kappa_minus = GaussRational(0);
    CHECK_THROWS_AS(open_charge_expansion(bad, 2), std::domain_error);
    CHECK_THROWS_AS(boundary_u(Side::minus, bad), std::domain_error);
}

TEST_CASE("boundary conditions from U_bulk = U_boundary", "[boundary]")
{
    auto plus = extract_boundary_conditions(bulk_u2(), boundary_u(Side::plus, {}));
    REQUIRE(plus.conditions.size() == 2);
    std::map<Base, NCPolynomial> vp, vm;
    for (const auto &c : plus.conditions) vp.emplace(c.field.base, c.value);
    CHECK(vp.at(Base::u).is_zero());
    CHECK(vp.at(Base::uh) == S("xip*kinvp"));
    REQUIRE(plus.flags.size() == 1);
    CHECK(plus.flags[0].power == 1);
    CHECK(plus.flags[0].coefficient == S("i*kinvp"));

    auto minus = extract_boundary_conditions(bulk_u2(), boundary_u(Side::minus, {}));
    for (const auto &c : minus.conditions) vm.emplace(c.field.base, c.value);
    CHECK(vm.at(Base::uh).is_zero());
    CHECK(vm.at(Base::u) == S("xim*kinvm"));
    REQUIRE(minus.flags.size() == 1);
    CHECK(minus.flags[0].coefficient == S("i*kinvm"));
}

TEST_CASE("imposing the extracted conditions leaves only the flags", "[boundary]")
{
    for (Side side : {Side::plus, Side::minus}) {
        LaxOperator bdry = boundary_u(side, {});
        auto bc = extract_boundary_conditions(bulk_u2(), bdry);
        MatrixSeries delta = bdry.matrix - bulk_u2().matrix;
        CHECK((apply_conditions(delta, bc) - flag_series(bc)).is_zero());

        LaxOperator reduced = bdry;
        reduced.matrix = bdry.matrix.map([&](const PolyMatrix &m) { return substitute(m, bc.rules()); });
        LaxOperator bulk = bulk_u2();
        bulk.matrix = bulk.matrix.map([&](const PolyMatrix &m) { return substitute(m, bc.rules()); });
        auto again = extract_boundary_conditions(bulk, reduced);
        CHECK(again.conditions.empty());
        CHECK(again.flags.size() == bc.flags.size());
    }
}

TEST_CASE("identical bulk and boundary give no conditions", "[boundary]")
{
    auto bc = extract_boundary_conditions(bulk_u2(), bulk_u2());
    CHECK(bc.conditions.empty());
    CHECK(bc.flags.empty());
}

TEST_CASE("a field-free boundary mismatch is inconsistent", "[boundary]")
{
    LaxOperator bdry = bulk_u2();
    PolyMatrix c = PolyMatrix::zero(Mode::scalar);
    c.set(0, 0, NCPolynomial::constant(Mode::scalar, scalar_shape, GaussRational(1)));
    bdry.matrix += MatrixSeries::monomial(c, 0);
    CHECK_THROWS_AS(extract_boundary_conditions(bulk_u2(), bdry), InconsistentBoundaryError);
}
