// Acceptance criteria, one PASS/FAIL line each. Lines marked "known" are
// printed-table discrepancies whose exact diff is pinned; they fail visibly
// without failing the run. Anything else failing exits 1.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <laxforge/boundary.hpp>
#include <laxforge/cli/tables.hpp>
#include <laxforge/hierarchy.hpp>
#include <laxforge/ncpoly/parse.hpp>
#include <laxforge/oracle.hpp>

using namespace laxforge;

namespace
{

constexpr double symbolic_zero_tol = 1e-9;
constexpr int min_trig_samples = 100;
constexpr double exponential_tol = 1e-12;
constexpr int exponential_draws = 20;
constexpr double fd_ratio = 4.0;
constexpr double fd_ratio_slack = 0.2;
constexpr double fd_step = 1e-3;
constexpr double conservation_seconds = 10.0;

const std::string golden_dir = LAXFORGE_GOLDEN_DIR;

int unexpected = 0;

void line(const std::string &id, bool ok, const std::string &what, const std::string &detail = "")
{
    if (!ok) ++unexpected;
    std::printf("%s %s %s%s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(),
                detail.empty() ? "" : (" [" + detail + "]").c_str());
}

// A discrepancy with a pinned diff: FAIL is expected, a different outcome is not.
void known(const std::string &id, const std::string &what, bool mismatched, bool diff_as_pinned, const std::string &diff)
{
    if (mismatched && diff_as_pinned) {
        std::printf("FAIL %s %s [known discrepancy, diff: %s]\n", id.c_str(), what.c_str(), diff.c_str());
        return;
    }
    ++unexpected;
    std::printf("FAIL %s %s [unexpected: %s]\n", id.c_str(), what.c_str(),
                mismatched ? ("diff changed to " + diff).c_str() : "now matches, unpin the discrepancy");
}

golden::TableResult table(const std::string &name, const std::vector<golden::Object> &objs)
{
    return golden::compare(golden::load_table(golden_dir + "/" + name + ".json"), objs);
}

bool all_ok(const golden::TableResult &r, std::initializer_list<const char *> ids, std::string &bad)
{
    bool ok = true;
    for (const char *id : ids) {
        const auto *e = r.find(id);
        if (!e || !e->ok()) {
            ok = false;
            bad += std::string(bad.empty() ? "" : " ") + id;
        }
    }
    return ok;
}

NCPolynomial S(const char *text) { return parse_polynomial(text, Mode::scalar); }

void guarded(const std::string &id, const std::function<void()> &f)
{
    try {
        f();
    } catch (const std::exception &e) {
        line(id, false, "threw", e.what());
    }
}

} // namespace

int main()
{
    guarded("1", [] {
        auto sol = RiccatiCache::instance().w_z(5, Mode::scalar);
        auto r = table("riccati_scalar", cli::riccati_objects(*sol));
        std::string bad;
        line("1a", all_ok(r, {"W1", "W2", "W3", "W4", "Z1", "Z2", "Z3", "Z4"}, bad), "W1-W4 and Z1-Z4 match the goldens", bad);
        const auto *w5 = r.find("W5");
        bool pinned = w5 && w5->cells.size() == 4 && w5->cells[1].diff == "-4*uh*pi*pih"
                      && w5->cells[2].diff == "4*u*pi*pih";
        std::string diff = pinned ? "(1,2) -4*uh*pi*pih, (2,1) 4*u*pi*pih" : (w5 && !w5->cells.empty() ? w5->cells[1].diff : "?");
        known("1b", "W5 matches on psibar-free terms", w5 && w5->status == "mismatch", pinned, diff);
    });

    guarded("2", [] {
        auto g = RiccatiCache::instance().gamma(4, GammaKind::gamma, Mode::matrix);
        std::string bad;
        line("2", all_ok(table("gamma", cli::gamma_objects(*g)), {"Gamma1", "Gamma2", "Gamma3", "Gamma4"}, bad),
             "Gamma1-Gamma4 match the goldens in matrix mode", bad);
    });

    guarded("3", [] {
        std::vector<golden::Object> gen, dress;
        for (int n = 1; n <= 4; ++n) {
            for (auto &o : cli::u_objects(cli::Route::gen, n, Mode::scalar)) gen.push_back(o);
            for (auto &o : cli::u_objects(cli::Route::dress, n, Mode::matrix)) dress.push_back(o);
        }
        std::string bad;
        bool ok = all_ok(table("u_gen", gen), {"U1", "U2", "U3", "U4"}, bad);
        ok = all_ok(table("u_dress", dress), {"U1", "U2", "U3", "U4"}, bad) && ok;
        bool agree = true;
        for (int n = 1; n <= 4; ++n) {
            MatrixSeries m = to_scalar(dress_u(n, Mode::matrix)).matrix;
            MatrixSeries shift =
                MatrixSeries::monomial(PolyMatrix::identity(Mode::scalar) * GaussRational(make_rational(1, 2)), n - 1);
            agree = agree && (m - dress_u(n, Mode::scalar).matrix).is_zero()
                    && (generate_u(n).matrix - m - shift).is_zero();
        }
        line("3", ok && agree, "U1-U4 goldens for both routes, routes agree at N = M = 1 up to lam^(n-1)/2",
             agree ? bad : bad + " route");
    });

    guarded("4", [] {
        auto h = table("charges_H", cli::charge_objects(ChargeKind::H, 4));
        auto i = table("charges_I", cli::charge_objects(ChargeKind::I, 3));
        std::string bad;
        bool ok = all_ok(h, {"H1", "H2", "H3"}, bad);
        ok = all_ok(i, {"I1", "I2", "I3"}, bad) && ok;
        line("4a", ok, "H1-H3 and I1-I3 match the goldens", bad);
        const auto *h4 = h.find("H4");
        std::string diff = h4 && h4->cells.size() == 1 ? h4->cells[0].diff : "?";
        known("4b", "H4 matches up to parenthesization", h4 && h4->status == "mismatch",
              diff == "pi*pih_t - pih*pih_t", diff);
    });

    guarded("5", [] {
        auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::string bad;
        for (int k = 1; k <= 3; ++k) {
            for (ChargeKind kind : {ChargeKind::H, ChargeKind::I}) {
                auto rec = verify_conservation(k, kind);
                bool good = rec.conserved && rec.flux && rec.flux->differentiate_t() == rec.dx_density;
                if (!good) bad += to_string(kind) + std::to_string(k) + " ";
                ok = ok && good;
            }
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f s", secs);
        line("5", ok && secs < conservation_seconds, "conservation of H and I for k = 1..3 under 10 s", bad + buf);
    });

    guarded("6", [] {
        bool refl = boundary::reflection_residual(boundary::k_matrix_symbolic()).is_zero();
        bool v = boundary::poisson_residual(boundary::LaxWhich::V).holds();
        bool u = boundary::poisson_residual(boundary::LaxWhich::U).holds();
        line("6", refl && v && u, "reflection residual and Poisson residuals for V and U vanish identically",
             std::string(refl ? "" : "reflection ") + (v ? "" : "V ") + (u ? "" : "U"));
    });

    guarded("7", [] {
        auto ex = boundary::open_charge_expansion({}, 2);
        auto r = table("boundary_charges", cli::boundary_objects(ex));
        std::string bad;
        line("7a", all_ok(r, {"bulk", "H_plus"}, bad), "bulk and t = tau boundary charge match up to constants", bad);
        const auto *m = r.find("H_minus");
        bool pinned = ex.minus[1] == S("-u*uh + uh^2/2 + xim*kinvm*uh + i*kinvm*pi");
        std::string got = golden::detail::series_text(golden::detail::as_series(ex.minus[1]));
        known("7b", "t = -tau boundary charge matches up to constants", m && m->status == "mismatch", pinned,
              "computed " + got);

        using boundary::Side;
        auto plus = boundary::extract_boundary_conditions(boundary::bulk_u2(), boundary::boundary_u(Side::plus, {}));
        auto minus = boundary::extract_boundary_conditions(boundary::bulk_u2(), boundary::boundary_u(Side::minus, {}));
        std::map<Base, NCPolynomial> vp, vm;
        for (const auto &c : plus.conditions) vp.emplace(c.field.base, c.value);
        for (const auto &c : minus.conditions) vm.emplace(c.field.base, c.value);
        bool ok = plus.conditions.size() == 2 && minus.conditions.size() == 2 && vp.count(Base::u) && vp.count(Base::uh)
                  && vm.count(Base::u) && vm.count(Base::uh);
        ok = ok && vp.at(Base::u).is_zero() && vp.at(Base::uh) == S("xip*kinvp") && vm.at(Base::uh).is_zero()
             && vm.at(Base::u) == S("xim*kinvm");
        ok = ok && plus.flags.size() == 1 && plus.flags[0].power == 1 && plus.flags[0].coefficient == S("i*kinvp")
             && minus.flags.size() == 1 && minus.flags[0].power == 1 && minus.flags[0].coefficient == S("i*kinvm");
        line("7c", ok, "extracted conditions u(tau)=0, uh(tau)=xi+/kappa+, uh(-tau)=0, u(-tau)=xi-/kappa- with lam/kappa flags");
    });

    guarded("8", [] {
        bool s = table("eom_scalar", cli::eom_objects(nls_eom(Mode::scalar))).pass();
        bool m = table("eom_matrix", cli::eom_objects(nls_eom(Mode::matrix))).pass();
        line("8", s && m, "pi = uh_x, pih = u_x and the scalar and matrix NLS equations",
             std::string(s ? "" : "scalar ") + (m ? "" : "matrix"));
    });

    guarded("9", [] {
        oracle::NumericOptions opt;
        opt.trials = min_trig_samples;
        opt.tol = symbolic_zero_tol;
        opt.eom_exponential_tol = exponential_tol;
        opt.exponential_draws = exponential_draws;
        auto rep = oracle::run_numeric(opt);
        bool trig = true, expo = true;
        double worst_trig = 0, worst_exp = 0;
        for (const auto &c : rep.checks) {
            bool is_exp = c.name.find("exponential") != std::string::npos;
            if (is_exp) {
                worst_exp = std::max(worst_exp, c.name.rfind("eom.exponential.", 0) == 0 ? c.max_residual : 0.0);
                expo = expo && c.pass;
            } else {
                worst_trig = std::max(worst_trig, c.max_residual);
                trig = trig && c.pass && c.trials >= min_trig_samples;
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "max %.2e over %zu checks", worst_trig, rep.checks.size());
        line("9a", trig, "symbolic zeros below 1e-9 on >= 100 trig samples", buf);
        std::snprintf(buf, sizeof buf, "max EOM %.2e", worst_exp);
        line("9b", expo, "exponential solutions satisfy the EOM below 1e-12 over 20 draws", buf);

        oracle::FieldSample sample(opt.seed, {});
        auto fd = oracle::finite_difference_crosscheck(charges(ChargeKind::H, 2).back().density, sample, 0.3, -0.4,
                                                       fd_step, 2);
        std::snprintf(buf, sizeof buf, "ratio %.3f", fd.ratio);
        line("9c", std::abs(fd.ratio - fd_ratio) <= fd_ratio_slack * fd_ratio, "finite-difference error ratio 4 +- 20%",
             buf);
    });

    guarded("10", [] {
        oracle::NumericOptions opt;
        std::string a = oracle::to_json(oracle::run_numeric(opt)).dump(2);
        std::string b = oracle::to_json(oracle::run_numeric(opt)).dump(2);
        line("10", a == b, "same-seed numeric reports are byte-identical");
    });

    std::printf("%s\n", unexpected == 0 ? "acceptance: ok" : "acceptance: unexpected failures");
    return unexpected == 0 ? 0 : 1;
}
