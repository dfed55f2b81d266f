#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <laxforge/cli/tables.hpp>
#include <laxforge/ncpoly/latex.hpp>
#include <laxforge/oracle.hpp>

namespace
{

using namespace laxforge;
using golden::Object;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string mode = "scalar";
    std::string out = "text";
    std::string output;
    std::string golden_dir;
    std::uint64_t seed = 42;
    double tol = 1e-9;

    int riccati_order = 5;
    std::string riccati_which = "w";

    std::string route = "gen";
    int u_n = 2;
    bool u_all = false;
    std::string charge_kind = "H";
    int max_k = 4;
    int verify_k = 2;
    std::string verify_kind = "H";
    int eom_flow = 2;

    std::string which_lax = "V";
    int boundary_order = 2;
    std::string xi_plus, kappa_plus, xi_minus, kappa_minus;
    std::string side = "both";

    std::string target = "all";
    int trials = 100;

    std::string expression;
    int expr_dt = 0;
    int expr_dx = 0;

    Mode parsed_mode() const { return mode_from_string(mode); }
};

// Result of one command: objects, an optional report and the golden table that
// applies to it.
struct Outcome {
    std::string command;
    std::vector<Object> objects;
    Json report;
    std::vector<std::string> text;
    std::optional<std::string> golden_table;
    bool pass = true;
};

std::string latex_name(const std::string &id)
{
    std::size_t k = id.find_first_of("0123456789");
    std::string head = id.substr(0, k);
    std::string idx = k == std::string::npos ? "" : id.substr(k);
    static const std::map<std::string, std::string> symbols{
        {"Gamma", "\\Gamma"}, {"HatGamma", "\\hat{\\Gamma}"}, {"H_plus", "H_{+}"}, {"H_minus", "H_{-}"},
        {"I", "\\mathcal{I}"}};
    auto it = symbols.find(head);
    std::string base = it != symbols.end() ? it->second : "\\mathrm{" + head + "}";
    if (head.size() == 1 && std::isupper(static_cast<unsigned char>(head[0])) && head != "I") base = head;
    return idx.empty() ? base : base + "^{(" + idx + ")}";
}

std::string object_text(const Object &o)
{
    if (o.polynomial) return o.polynomial->to_string();
    const PolyMatrix &z = o.matrix->zero_coefficient();
    std::string s = "[";
    for (std::size_t i = 0; i < z.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < z.cols(); ++j) {
            if (j) s += ", ";
            s += golden::detail::series_text(golden::detail::entry_of(*o.matrix, i, j));
        }
        s += "]";
    }
    return s + "]";
}

std::string object_latex(const Object &o)
{
    std::string body = o.polynomial ? to_latex(*o.polynomial) : to_latex(*o.matrix);
    return latex_name(o.id) + " = " + body;
}

Json document(const Outcome &r, const RunConfig &cfg)
{
    Json j;
    j["command"] = r.command;
    j["mode"] = cfg.mode;
    Json objs = Json::array();
    for (const auto &o : r.objects) objs.push_back(golden::to_json(o));
    j["objects"] = std::move(objs);
    if (!r.report.is_null()) j["report"] = r.report;
    j["pass"] = r.pass;
    return j;
}

std::string render(const Outcome &r, const RunConfig &cfg)
{
    std::ostringstream os;
    if (cfg.out == "json") {
        os << document(r, cfg).dump(2) << "\n";
        return os.str();
    }
    for (const auto &line : r.text) os << line << "\n";
    for (const auto &o : r.objects) os << (cfg.out == "latex" ? object_latex(o) : o.id + " = " + object_text(o)) << "\n";
    return os.str();
}

std::optional<GaussRational> parameter(const std::string &s, const char *name)
{
    if (s.empty()) return std::nullopt;
    try {
        return GaussRational::from_string(s);
    } catch (const std::exception &) {
        throw UsageError(std::string("malformed value for ") + name + ": '" + s + "'");
    }
}

boundary::BoundaryParams boundary_params(const RunConfig &cfg)
{
    boundary::BoundaryParams p;
    p.xi_plus = parameter(cfg.xi_plus, "--xi+");
    p.kappa_plus = parameter(cfg.kappa_plus, "--kappa+");
    p.xi_minus = parameter(cfg.xi_minus, "--xi-");
    p.kappa_minus = parameter(cfg.kappa_minus, "--kappa-");
    for (const auto &k : {p.kappa_plus, p.kappa_minus}) {
        if (k && k->is_zero()) throw UsageError("kappa must be nonzero");
    }
    return p;
}

Json rational_matrix_json(const boundary::RationalMatrix &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Outcome run_riccati(const RunConfig &cfg)
{
    Outcome r;
    r.command = "riccati";
    Mode mode = cfg.parsed_mode();
    if (cfg.riccati_which == "w") {
        auto sol = RiccatiCache::instance().w_z(cfg.riccati_order, mode);
        r.objects = cli::riccati_objects(*sol);
        if (mode == Mode::scalar) r.golden_table = "riccati_scalar";
        return r;
    }
    GammaKind kind = cfg.riccati_which == "gamma" ? GammaKind::gamma : GammaKind::hat_gamma;
    auto sol = RiccatiCache::instance().gamma(cfg.riccati_order, kind, mode);
    r.objects = cli::gamma_objects(*sol);
    if (kind == GammaKind::gamma && mode == Mode::matrix) r.golden_table = "gamma";
    return r;
}

Outcome run_hierarchy_u(const RunConfig &cfg)
{
    Outcome r;
    r.command = "hierarchy u";
    cli::Route route = cli::route_from_string(cfg.route);
    Mode mode = cfg.parsed_mode();
    for (int n = cfg.u_all ? 1 : cfg.u_n; n <= cfg.u_n; ++n) {
        for (auto &o : cli::u_objects(route, n, mode)) r.objects.push_back(std::move(o));
    }
    if ((route == cli::Route::gen) == (mode == Mode::scalar)) r.golden_table = cli::golden_u_table(route);
    return r;
}

ChargeKind charge_kind(const std::string &s)
{
    if (s == "H") return ChargeKind::H;
    if (s == "I") return ChargeKind::I;
    throw UsageError("unknown charge kind '" + s + "'");
}

Outcome run_hierarchy_charges(const RunConfig &cfg)
{
    Outcome r;
    r.command = "hierarchy charges";
    ChargeKind kind = charge_kind(cfg.charge_kind);
    r.objects = cli::charge_objects(kind, cfg.max_k);
    r.golden_table = "charges_" + cfg.charge_kind;
    return r;
}

Outcome run_hierarchy_verify(const RunConfig &cfg)
{
    Outcome r;
    r.command = "hierarchy verify";
    ChargeKind kind = charge_kind(cfg.verify_kind);
    ConservationRecord rec = verify_conservation(cfg.verify_k, kind);
    std::string id = to_string(kind) + std::to_string(cfg.verify_k);
    r.objects.push_back(Object::of(id, rec.density));
    r.objects.push_back(Object::of(id + "_dx", rec.dx_density));
    if (rec.flux) r.objects.push_back(Object::of(id + "_flux", *rec.flux));
    r.report = {{"charge", id}, {"conserved", rec.conserved}};
    if (!rec.reason.empty()) r.report["reason"] = rec.reason;
    r.pass = rec.conserved;
    r.text.push_back(id + (rec.conserved ? " conserved: d_x density = d_t flux" : " not conserved: " + rec.reason));
    return r;
}

Outcome run_hierarchy_eom(const RunConfig &cfg)
{
    Outcome r;
    r.command = "hierarchy eom";
    Mode mode = cfg.parsed_mode();
    cli::Route route = mode == Mode::scalar ? cli::Route::gen : cli::Route::dress;
    EomSystem sys = extract_eom(cli::hierarchy_u(route, cfg.eom_flow, mode), make_v(mode));
    r.objects = cli::eom_objects(sys);
    Json rules = Json::array();
    for (const auto &rule : sys.rules) {
        rules.push_back({{"pattern", rule.pattern[0].to_string()}, {"replacement", rule.replacement.to_string()}});
        r.text.push_back(rule.pattern[0].to_string() + " -> " + rule.replacement.to_string());
    }
    r.report = {{"flow", cfg.eom_flow}, {"rules", rules}};
    if (cfg.eom_flow == 2) r.golden_table = "eom_" + cfg.mode;
    return r;
}

Outcome run_reflect_check(const RunConfig &)
{
    Outcome r;
    r.command = "boundary reflect-check";
    boundary::RationalMatrix res = boundary::reflection_residual(boundary::k_matrix_symbolic());
    r.pass = res.is_zero();
    std::string verdict = r.pass ? "residual ≡ 0" : "residual nonzero";
    r.report = {{"k_matrix", rational_matrix_json(boundary::k_matrix_symbolic())}, {"residual_zero", r.pass},
                {"result", verdict}};
    if (!r.pass) r.report["residual"] = rational_matrix_json(res);
    r.text.push_back("reflection equation: " + verdict);
    return r;
}

Outcome run_poisson_check(const RunConfig &cfg)
{
    Outcome r;
    r.command = "boundary poisson-check";
    boundary::LaxWhich which;
    if (cfg.which_lax == "V") {
        which = boundary::LaxWhich::V;
    } else if (cfg.which_lax == "U") {
        which = boundary::LaxWhich::U;
    } else {
        throw UsageError("--which must be V or U");
    }
    auto rep = boundary::poisson_residual(which);
    r.pass = rep.holds();
    std::string verdict = rep.residual.is_zero() ? "residual ≡ 0" : "residual nonzero";
    r.report = {{"which", cfg.which_lax},
                {"residual_zero", rep.residual.is_zero()},
                {"antisymmetric", rep.antisymmetric},
                {"coincident_zero", rep.coincident_zero},
                {"result", verdict}};
    if (!rep.residual.is_zero()) r.report["residual"] = rational_matrix_json(rep.residual);
    r.text.push_back("linear Poisson algebra (" + cfg.which_lax + "): " + verdict);
    return r;
}

Outcome run_boundary_charges(const RunConfig &cfg)
{
    Outcome r;
    r.command = "boundary charges";
    auto params = boundary_params(cfg);
    auto ex = boundary::open_charge_expansion(params, cfg.boundary_order);
    r.objects = cli::boundary_objects(ex);
    r.report = {{"order", cfg.boundary_order},
                {"plus_raw", ex.plus_raw.back().to_string()},
                {"minus_raw", ex.minus_raw.back().to_string()}};
    bool symbolic = !params.xi_plus && !params.xi_minus && !params.kappa_plus && !params.kappa_minus;
    if (symbolic && cfg.boundary_order == 2) r.golden_table = "boundary_charges";
    return r;
}

Outcome run_extract_bc(const RunConfig &cfg)
{
    Outcome r;
    r.command = "boundary extract-bc";
    auto params = boundary_params(cfg);
    std::vector<boundary::Side> sides;
    if (cfg.side == "+" || cfg.side == "both") sides.push_back(boundary::Side::plus);
    if (cfg.side == "-" || cfg.side == "both") sides.push_back(boundary::Side::minus);
    if (sides.empty()) throw UsageError("--side must be +, - or both");
    Json out = Json::array();
    for (auto side : sides) {
        std::string tag = side == boundary::Side::plus ? "plus" : "minus";
        std::string at = side == boundary::Side::plus ? "tau" : "-tau";
        auto bc = boundary::extract_boundary_conditions(boundary::bulk_u2(), boundary::boundary_u(side, params));
        Json conds = Json::array();
        for (const auto &c : bc.conditions) {
            std::string name = std::string(base_name(c.field.base));
            r.objects.push_back(Object::of(tag + "_" + name, c.value));
            conds.push_back({{"field", name}, {"at", at}, {"value", c.value.to_string()}});
            r.text.push_back(name + "(" + at + ") = " + c.value.to_string());
        }
        Json flags = Json::array();
        for (const auto &f : bc.flags) {
            flags.push_back({{"entry", {f.row, f.col}}, {"lam_power", f.power}, {"coefficient", f.coefficient.to_string()}});
            r.text.push_back("  large-parameter: entry (" + std::to_string(f.row + 1) + "," + std::to_string(f.col + 1)
                             + ") keeps lam^" + std::to_string(f.power) + " * (" + f.coefficient.to_string() + ")");
        }
        out.push_back({{"side", tag}, {"conditions", conds}, {"flags", flags}});
    }
    r.report = {{"sides", out}};
    return r;
}

Outcome run_verify_numeric(const RunConfig &cfg)
{
    Outcome r;
    r.command = "verify numeric";
    oracle::NumericOptions opt;
    try {
        opt.target = oracle::numeric_target_from_string(cfg.target);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    opt.trials = cfg.trials;
    opt.tol = cfg.tol;
    opt.seed = cfg.seed;
    auto rep = oracle::run_numeric(opt);
    r.report = oracle::to_json(rep);
    r.pass = rep.pass();
    for (const auto &c : rep.checks) {
        std::ostringstream line;
        line << (c.pass ? "PASS " : "FAIL ") << c.name << "  max " << c.max_residual << "  tol " << c.tol;
        r.text.push_back(line.str());
    }
    return r;
}

Outcome run_expr(const RunConfig &cfg)
{
    Outcome r;
    r.command = "expr";
    Mode mode = cfg.parsed_mode();
    auto parse = [&] {
        try {
            return parse_series(cfg.expression, mode);
        } catch (const ParseError &e) {
            throw UsageError(std::string("malformed expression: ") + e.what());
        }
    };
    ScalarSeries s = parse();
    bool lam_free = s.coefficients().empty() || (s.coefficients().size() == 1 && s.coefficients().count(0));
    if (lam_free) {
        NCPolynomial p = s.coefficients().empty() ? s.zero_coefficient() : s.coefficients().at(0);
        if (cfg.expr_dt) p = p.differentiate_t(cfg.expr_dt);
        for (int k = 0; k < cfg.expr_dx; ++k) p = p.differentiate_x(2);
        r.objects.push_back(Object::of("expr", p));
        return r;
    }
    if (cfg.expr_dt || cfg.expr_dx) throw UsageError("derivatives apply to lam-free expressions only");
    if (mode == Mode::matrix) throw UsageError("lam-dependent expressions are supported in scalar mode only");
    MatrixSeries m(PolyMatrix(mode, {Dim::one}, {Dim::one}));
    for (const auto &[k, c] : s.coefficients()) {
        PolyMatrix e(mode, {Dim::one}, {Dim::one});
        e.set(0, 0, c);
        m.set(k, e);
    }
    r.objects.push_back(Object::of("expr", m));
    return r;
}

bool seed_on_command_line(int argc, char **argv)
{
    for (int k = 1; k < argc; ++k) {
        std::string a = argv[k];
        if (a == "--seed" || a.rfind("--seed=", 0) == 0) return true;
    }
    return false;
}

int compare_golden(const Outcome &r, const RunConfig &cfg, const std::string &emitted_json)
{
    if (!r.golden_table) {
        std::cerr << "laxforge: no golden table applies to '" << r.command << "' with these options\n";
        return exit_usage;
    }
    std::vector<Object> emitted;
    Json doc = Json::parse(emitted_json);
    for (const auto &o : doc.at("objects")) emitted.push_back(golden::object_from_json(o));
    auto table = golden::load_table(std::filesystem::path(cfg.golden_dir) / (*r.golden_table + ".json"));
    auto result = golden::compare(table, emitted);
    std::cerr << golden::to_json(result).dump(2) << "\n";
    return result.pass() ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char **argv)
{
    RunConfig cfg;
    CLI::App app{"laxforge: time-like NLS hierarchy, Riccati series and boundary checks"};
    app.set_config("--config", "", "key=value run configuration (subcommand keys as riccati.order=5)");
    app.fallthrough();
    app.allow_config_extras(false);
    app.require_subcommand(1);

    app.add_option("--mode", cfg.mode, "scalar or matrix")->check(CLI::IsMember({"scalar", "matrix"}));
    app.add_option("--out", cfg.out, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
    app.add_option("-o,--output", cfg.output, "write output to this file");
    app.add_option("--seed", cfg.seed, "random seed (LAXFORGE_SEED overrides the config file)");
    app.add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--golden", cfg.golden_dir, "compare emitted objects to the tables in this directory")
        ->check(CLI::ExistingDirectory);

    auto *riccati = app.add_subcommand("riccati", "W, Z and Gamma series of the time Riccati equations");
    riccati->add_option("--order", cfg.riccati_order, "number of 1/lam orders")->check(CLI::PositiveNumber);
    riccati->add_option("--which", cfg.riccati_which)->check(CLI::IsMember({"w", "gamma", "hat_gamma"}));

    auto *hierarchy = app.add_subcommand("hierarchy", "U operators, charges and equations of motion");
    hierarchy->require_subcommand(1);
    auto *hu = hierarchy->add_subcommand("u", "U^(n) by the generating or the dressing route");
    hu->add_option("--route", cfg.route)->check(CLI::IsMember({"gen", "dress"}));
    hu->add_option("--n", cfg.u_n)->check(CLI::PositiveNumber);
    hu->add_flag("--all", cfg.u_all, "emit U^(1) .. U^(n)");
    auto *hc = hierarchy->add_subcommand("charges", "conserved densities H^(k) or I^(k)");
    hc->add_option("--kind", cfg.charge_kind)->check(CLI::IsMember({"H", "I"}));
    hc->add_option("--max-k", cfg.max_k)->check(CLI::PositiveNumber);
    auto *hv = hierarchy->add_subcommand("verify", "conservation certificate for one charge");
    hv->add_option("--k", cfg.verify_k)->check(CLI::PositiveNumber);
    hv->add_option("--kind", cfg.verify_kind)->check(CLI::IsMember({"H", "I"}));
    auto *he = hierarchy->add_subcommand("eom", "equations of motion of the (V, U^(n)) pair");
    he->add_option("--flow", cfg.eom_flow)->check(CLI::Range(1, 4));

    auto *bd = app.add_subcommand("boundary", "reflection algebra and open-boundary charges");
    bd->require_subcommand(1);
    auto *brc = bd->add_subcommand("reflect-check", "reflection equation for the K matrix");
    auto *bpc = bd->add_subcommand("poisson-check", "linear Poisson algebra of V or U");
    bpc->add_option("--which", cfg.which_lax)->check(CLI::IsMember({"V", "U"}));
    auto *bch = bd->add_subcommand("charges", "bulk and boundary terms of the open charge");
    bch->add_option("--order", cfg.boundary_order)->check(CLI::PositiveNumber);
    auto *bbc = bd->add_subcommand("extract-bc", "boundary conditions from U_bulk = U_boundary at t = +-tau");
    bbc->add_option("--side", cfg.side)->check(CLI::IsMember({"+", "-", "both"}));
    for (auto *sub : {bch, bbc}) {
        sub->add_option("--xi+", cfg.xi_plus, "xi at t = tau (symbolic when omitted)");
        sub->add_option("--kappa+", cfg.kappa_plus, "kappa at t = tau");
        sub->add_option("--xi-", cfg.xi_minus, "xi at t = -tau");
        sub->add_option("--kappa-", cfg.kappa_minus, "kappa at t = -tau");
    }

    auto *vf = app.add_subcommand("verify", "numeric oracle");
    vf->require_subcommand(1);
    auto *vn = vf->add_subcommand("numeric", "evaluate symbolic zeros on random and exact fields");
    vn->add_option("--target", cfg.target)->check(CLI::IsMember({"riccati", "eom", "conservation", "all"}));
    vn->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);

    auto *ex = app.add_subcommand("expr", "parse an expression and print its canonical form");
    ex->add_option("expression", cfg.expression)->required();
    ex->add_option("--dt", cfg.expr_dt, "t-derivatives to apply")->check(CLI::NonNegativeNumber);
    ex->add_option("--dx", cfg.expr_dx, "x-derivatives to apply")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    if (const char *env = std::getenv("LAXFORGE_SEED"); env && !seed_on_command_line(argc, argv)) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception &) {
            std::cerr << "laxforge: LAXFORGE_SEED is not an integer\n";
            return exit_usage;
        }
    }

    Outcome r;
    try {
        if (riccati->parsed()) r = run_riccati(cfg);
        else if (hu->parsed()) r = run_hierarchy_u(cfg);
        else if (hc->parsed()) r = run_hierarchy_charges(cfg);
        else if (hv->parsed()) r = run_hierarchy_verify(cfg);
        else if (he->parsed()) r = run_hierarchy_eom(cfg);
        else if (brc->parsed()) r = run_reflect_check(cfg);
        else if (bpc->parsed()) r = run_poisson_check(cfg);
        else if (bch->parsed()) r = run_boundary_charges(cfg);
        else if (bbc->parsed()) r = run_extract_bc(cfg);
        else if (vn->parsed()) r = run_verify_numeric(cfg);
        else if (ex->parsed()) r = run_expr(cfg);
    } catch (const UsageError &e) {
        std::cerr << "laxforge: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "laxforge: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "laxforge: " << e.what() << "\n";
        return exit_failed;
    }

    std::string text = render(r, cfg);
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            std::cerr << "laxforge: cannot write " << cfg.output << "\n";
            return exit_usage;
        }
        f << text;
    }
    if (!r.pass && !r.report.is_null()) std::cerr << r.report.dump(2) << "\n";

    int code = r.pass ? exit_ok : exit_failed;
    if (!cfg.golden_dir.empty()) {
        try {
            int g = compare_golden(r, cfg, document(r, cfg).dump());
            if (g != exit_ok) code = g;
        } catch (const std::exception &e) {
            std::cerr << "laxforge: " << e.what() << "\n";
            return exit_usage;
        }
    }
    return code;
}
