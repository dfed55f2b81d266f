#ifndef LAXFORGE_ORACLE_CHECKS_HPP
#define LAXFORGE_ORACLE_CHECKS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <laxforge/hierarchy.hpp>
#include <laxforge/ncpoly/json.hpp>
#include <laxforge/oracle/eval.hpp>

namespace laxforge::oracle
{

struct CheckReport {
    std::string name;
    int trials = 0;
    double tol = 0;
    double max_residual = 0;
    std::string worst_source;
    std::uint64_t worst_seed = 0;
    double worst_t = 0, worst_x = 0;
    bool pass = false;
};

using Residual = std::function<double(const FieldSource &, double t, double x)>;

// Max-reduces a residual over random trig samples and points in [-1, 1]^2.
inline CheckReport identity_check(const std::string &name, const Residual &residual, int trials, double tol,
                                  std::uint64_t seed, FieldSample::Options opt = {})
{
    CheckReport rep;
    rep.name = name;
    rep.trials = trials;
    rep.tol = tol;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> point(-1.0, 1.0);
    for (int k = 0; k < trials; ++k) {
        std::uint64_t s = rng();
        double t = point(rng), x = point(rng);
        FieldSample sample(s, opt);
        double r = residual(sample, t, x);
        if (k == 0 || r > rep.max_residual || std::isnan(r)) {
            rep.max_residual = std::isnan(r) ? INFINITY : r;
            rep.worst_seed = s;
            rep.worst_t = t;
            rep.worst_x = x;
            rep.worst_source = sample.describe();
        }
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

inline CheckReport identity_check(const NCPolynomial &lhs, const NCPolynomial &rhs, int trials, double tol,
                                  std::uint64_t seed, FieldSample::Options opt = {})
{
    return identity_check(
        "identity",
        [&](const FieldSource &s, double t, double x) { return (eval(lhs, s, t, x) - eval(rhs, s, t, x)).max_abs(); },
        trials, tol, seed, opt);
}

// Max-reduces over exponential solutions with |alpha|, |beta|, |k| <= 2 and
// points in [-span, span]^2.
inline CheckReport exponential_check(const std::string &name, const Residual &residual, int draws,
                                     int points_per_draw, double tol, std::uint64_t seed, double span = 0.1)
{
    CheckReport rep;
    rep.name = name;
    rep.trials = draws * points_per_draw;
    rep.tol = tol;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mod(0.0, 2.0), phase(0.0, 2 * M_PI), point(-span, span);
    bool first = true;
    for (int d = 0; d < draws; ++d) {
        std::uint64_t s = rng();
        std::mt19937_64 draw(s);
        cplx a = std::polar(mod(draw), phase(draw));
        cplx b = std::polar(mod(draw), phase(draw));
        cplx k = std::polar(mod(draw), phase(draw));
        ExponentialSolution sol(a, b, k);
        for (int p = 0; p < points_per_draw; ++p) {
            double t = point(rng), x = point(rng);
            double r = residual(sol, t, x);
            if (first || r > rep.max_residual || std::isnan(r)) {
                first = false;
                rep.max_residual = std::isnan(r) ? INFINITY : r;
                rep.worst_seed = s;
                rep.worst_t = t;
                rep.worst_x = x;
                rep.worst_source = sol.describe();
            }
        }
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

namespace detail
{

inline std::vector<CMatrix> eval_all(const std::vector<PolyMatrix> &ms, const FieldSource &s, double t, double x)
{
    std::vector<CMatrix> out;
    for (const auto &m : ms) out.push_back(eval(m, s, t, x));
    return out;
}

// Numeric lam^-n coefficient of d_t W + [W, V_D] + W V_A W - V_A, with d_t
// taken by the numeric Leibniz rule.
inline double w_residual_numeric(const RiccatiSolution &sol, const FieldSource &s, double t, double x)
{
    auto v = model::v_parts(sol.mode);
    CMatrix d2 = eval(v.d2, s, t, x), d0 = eval(v.d0, s, t, x), a1 = eval(v.a1, s, t, x), a0 = eval(v.a0, s, t, x);
    auto w = eval_all(sol.w, s, t, x);
    CMatrix zero(d2.rows, d2.cols);
    auto W = [&](int k) { return k >= 1 && k <= static_cast<int>(w.size()) ? w[static_cast<std::size_t>(k - 1)] : zero; };
    auto comm = [](const CMatrix &p, const CMatrix &q) { return p * q - q * p; };
    double worst = 0;
    for (int n = -1; n <= sol.order - 2; ++n) {
        CMatrix r = n >= 1 ? eval_derivative(sol.W(n), s, t, x) : zero;
        r += comm(W(n + 2), d2) + comm(W(n), d0);
        for (int j = 1; j <= n; ++j) {
            if (n + 1 - j >= 1) r += W(j) * a1 * W(n + 1 - j);
            if (n - j >= 1) r += W(j) * a0 * W(n - j);
        }
        if (n == -1) r -= a1;
        if (n == 0) r -= a0;
        worst = std::max(worst, r.max_abs());
    }
    return worst;
}

inline double gamma_residual_numeric(const GammaSolution &sol, const FieldSource &s, double t, double x)
{
    BlockRiccati eq = gamma_equation(sol.which, sol.mode);
    auto ev = [&](const NCPolynomial &p) { return eval(p, s, t, x); };
    CMatrix c1 = ev(eq.c1), c0 = ev(eq.c0), a0 = ev(eq.a0), b0 = ev(eq.b0), q0 = ev(eq.q0), q1 = ev(eq.q1);
    std::vector<CMatrix> xs;
    for (const auto &p : sol.coeffs) xs.push_back(ev(p));
    CMatrix zero(c1.rows, c1.cols);
    auto X = [&](int k) { return k >= 1 && k <= static_cast<int>(xs.size()) ? xs[static_cast<std::size_t>(k - 1)] : zero; };
    double worst = 0;
    for (int n = -1; n <= sol.order - 2; ++n) {
        CMatrix r = zero;
        if (n >= 1) r -= eval_derivative(sol[n], s, t, x);
        if (n == -1) r += c1;
        if (n == 0) r += c0;
        r += a0 * X(n) + X(n) * b0 + X(n + 2) * cplx(eq.s);
        for (int j = 1; j <= n; ++j) {
            if (n - j >= 1) r += X(j) * q0 * X(n - j);
            if (n + 1 - j >= 1) r += X(j) * q1 * X(n + 1 - j);
        }
        worst = std::max(worst, r.max_abs());
    }
    return worst;
}

inline double series_max_abs(const MatrixSeries &m, const FieldSource &s, double t, double x)
{
    double worst = 0;
    for (const auto &[p, c] : m.coefficients()) worst = std::max(worst, eval(c, s, t, x).max_abs());
    return worst;
}

} // namespace detail

enum class NumericTarget { riccati, eom, conservation, all };

inline NumericTarget numeric_target_from_string(const std::string &s)
{
    if (s == "riccati") return NumericTarget::riccati;
    if (s == "eom") return NumericTarget::eom;
    if (s == "conservation") return NumericTarget::conservation;
    if (s == "all") return NumericTarget::all;
    throw std::invalid_argument("unknown numeric target '" + s + "'");
}

inline std::string to_string(NumericTarget t)
{
    switch (t) {
    case NumericTarget::riccati: return "riccati";
    case NumericTarget::eom: return "eom";
    case NumericTarget::conservation: return "conservation";
    case NumericTarget::all: return "all";
    }
    return "?";
}

struct NumericOptions {
    NumericTarget target = NumericTarget::all;
    int trials = 100;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    // Pinned tolerances of the exponential-solution checks.
    double eom_exponential_tol = 1e-12;
    double flux_exponential_tol = 1e-10;
    int exponential_draws = 20;
    int points_per_draw = 5;
};

struct NumericReport {
    NumericOptions options;
    std::vector<CheckReport> checks;
    bool pass() const
    {
        for (const auto &c : checks) {
            if (!c.pass) return false;
        }
        return !checks.empty();
    }
};

inline NumericReport run_numeric(const NumericOptions &opt)
{
    NumericReport rep;
    rep.options = opt;
    std::uint64_t index = 0;
    // Every check draws from its own stream so adding one leaves the others unchanged.
    auto stream = [&]() {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(index++)};
        std::uint32_t out[2];
        seq.generate(out, out + 2);
        return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    };
    FieldSample::Options scalar{Mode::scalar};
    FieldSample::Options matrix{Mode::matrix};
    bool all = opt.target == NumericTarget::all;
    auto &cache = RiccatiCache::instance();

    if (all || opt.target == NumericTarget::riccati) {
        for (Mode mode : {Mode::scalar, Mode::matrix}) {
            auto sol = cache.w_z(5, mode);
            rep.checks.push_back(identity_check(
                "riccati.w." + std::string(to_string(mode)),
                [&](const FieldSource &s, double t, double x) { return detail::w_residual_numeric(*sol, s, t, x); },
                opt.trials, opt.tol, stream(), mode == Mode::scalar ? scalar : matrix));
        }
        for (GammaKind g : {GammaKind::gamma, GammaKind::hat_gamma}) {
            auto sol = cache.gamma(5, g, Mode::matrix);
            rep.checks.push_back(identity_check(
                std::string("riccati.") + (g == GammaKind::gamma ? "gamma" : "hat_gamma"),
                [&](const FieldSource &s, double t, double x) { return detail::gamma_residual_numeric(*sol, s, t, x); },
                opt.trials, opt.tol, stream(), matrix));
        }
    }

    if (all || opt.target == NumericTarget::eom) {
        for (Mode mode : {Mode::scalar, Mode::matrix}) {
            EomSystem sys = nls_eom(mode);
            rep.checks.push_back(exponential_check(
                "eom.exponential." + std::string(to_string(mode)),
                [&](const FieldSource &s, double t, double x) {
                    double worst = 0;
                    for (const auto &e : sys.evolution) worst = std::max(worst, eval(e, s, t, x).max_abs());
                    return worst;
                },
                opt.exponential_draws, opt.points_per_draw, opt.eom_exponential_tol, stream()));
        }
        {
            LaxOperator u2 = generate_u(2);
            LaxOperator v = make_v(Mode::scalar);
            MatrixSeries res = zero_curvature_residual(u2, v);
            rep.checks.push_back(exponential_check(
                "eom.exponential.zero_curvature",
                [&](const FieldSource &s, double t, double x) { return detail::series_max_abs(res, s, t, x); },
                opt.exponential_draws, opt.points_per_draw, opt.tol, stream()));
        }
        for (Mode mode : {Mode::scalar, Mode::matrix}) {
            for (int n = 1; n <= 4; ++n) {
                LaxOperator u = mode == Mode::scalar ? generate_u(n) : dress_u(n, Mode::matrix);
                LaxOperator v = make_v(mode);
                EomSystem sys = extract_eom(u, v);
                MatrixSeries res = zero_curvature_residual(u, v);
                rep.checks.push_back(identity_check(
                    "eom.zero_curvature.flow" + std::to_string(n) + "." + std::string(to_string(mode)),
                    [&](const FieldSource &s, double t, double x) {
                        RuleSource rs(s, sys.rules);
                        return detail::series_max_abs(res, rs, t, x);
                    },
                    opt.trials, opt.tol, stream(), mode == Mode::scalar ? scalar : matrix));
            }
        }
    }

    if (all || opt.target == NumericTarget::conservation) {
        for (ChargeKind kind : {ChargeKind::H, ChargeKind::I}) {
            int top = kind == ChargeKind::H ? 4 : 3;
            for (int k = 1; k <= top; ++k) {
                ConservationRecord rec = verify_conservation(k, kind);
                if (!rec.flux) throw std::logic_error("no flux witness for " + to_string(kind) + std::to_string(k));
                NCPolynomial flux = *rec.flux;
                std::string base = "conservation." + to_string(kind) + std::to_string(k);
                rep.checks.push_back(identity_check(
                    base + ".trig",
                    [&](const FieldSource &s, double t, double x) {
                        return (eval(rec.dx_density, s, t, x) - eval_derivative(flux, s, t, x)).max_abs();
                    },
                    opt.trials, opt.tol, stream(), kind == ChargeKind::H ? scalar : matrix));
                rep.checks.push_back(exponential_check(
                    base + ".exponential",
                    [&](const FieldSource &s, double t, double x) {
                        return (eval_derivative(rec.density, s, t, x, Direction::x) - eval_derivative(flux, s, t, x))
                            .max_abs();
                    },
                    opt.exponential_draws, opt.points_per_draw, opt.flux_exponential_tol, stream()));
            }
        }
    }
    return rep;
}

inline Json to_json(const CheckReport &c)
{
    Json j;
    j["name"] = c.name;
    j["trials"] = c.trials;
    j["tol"] = c.tol;
    j["max_residual"] = c.max_residual;
    j["worst"] = {{"source", c.worst_source}, {"seed", c.worst_seed}, {"t", c.worst_t}, {"x", c.worst_x}};
    j["pass"] = c.pass;
    return j;
}

inline Json to_json(const NumericReport &r)
{
    Json j;
    j["target"] = to_string(r.options.target);
    j["seed"] = r.options.seed;
    j["trials"] = r.options.trials;
    j["tol"] = r.options.tol;
    Json checks = Json::array();
    for (const auto &c : r.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    j["pass"] = r.pass();
    return j;
}

} // namespace laxforge::oracle

#endif
