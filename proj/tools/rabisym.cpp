// Command-line front end: spectrum sweeps, symmetry-operator
// coefficient tables, J^2 polynomial fits, and invariant verification
// for the asymmetric two-photon Rabi model.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "rabisym/io.hpp"
#include "rabisym/model.hpp"
#include "rabisym/spectrum.hpp"
#include "rabisym/symmetry.hpp"

namespace fs = std::filesystem;
using namespace rabisym;

namespace
{

struct RunConfig
{
    double delta = 1.0;
    double epsilon = 0.0;
    bool epsilon_set = false;
    double bias_ratio = 0.0;
    bool bias_ratio_set = false;
    double g = 0.3;
    double g_min = 0.05;
    double g_max = 0.45;
    int g_steps = 400;
    int cutoff = 300;
    std::string sector = "even";
    int levels = 8;
    std::string out_dir = ".";
    unsigned seed = 12345;
    int threads = 0;

    Sector sector_enum() const
    {
        if (sector == "even")
            return Sector::Even;
        if (sector == "odd")
            return Sector::Odd;
        throw InvalidParams("sector must be 'even' or 'odd'");
    }

    int bias_index() const
    {
        const double n = std::round(bias_ratio);
        if (n < -0.5 || std::abs(bias_ratio - n) > 1e-9)
            throw InvalidParams("this command needs an integer --bias-ratio");
        return static_cast<int>(n);
    }

    ModelParams params_fixed_g() const
    {
        ModelParams p;
        p.delta = delta;
        p.g = g;
        p.epsilon = bias_ratio_set ? 2.0 * bias_ratio * p.beta() : epsilon;
        p.validate();
        return p;
    }
};

void load_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file " + path);
    nlohmann::json doc;
    in >> doc;
    auto get = [&](const char* key, auto& target) {
        if (doc.contains(key))
            target = doc[key].get<std::decay_t<decltype(target)>>();
    };
    get("delta", cfg.delta);
    if (doc.contains("epsilon"))
    {
        cfg.epsilon = doc["epsilon"].get<double>();
        cfg.epsilon_set = true;
    }
    if (doc.contains("bias_ratio"))
    {
        cfg.bias_ratio = doc["bias_ratio"].get<double>();
        cfg.bias_ratio_set = true;
    }
    get("g", cfg.g);
    get("g_min", cfg.g_min);
    get("g_max", cfg.g_max);
    get("g_steps", cfg.g_steps);
    get("cutoff", cfg.cutoff);
    get("sector", cfg.sector);
    get("levels", cfg.levels);
    get("out", cfg.out_dir);
    get("seed", cfg.seed);
    get("threads", cfg.threads);
}

SweepConfig make_sweep_config(const RunConfig& cfg)
{
    SweepConfig sc;
    sc.delta = cfg.delta;
    if (cfg.bias_ratio_set)
    {
        sc.mode = BiasMode::FixedRatio;
        sc.bias = cfg.bias_ratio;
    }
    else
    {
        sc.mode = BiasMode::FixedEpsilon;
        sc.bias = cfg.epsilon;
    }
    sc.g_grid = SweepConfig::linspace(cfg.g_min, cfg.g_max, cfg.g_steps);
    sc.sector = cfg.sector_enum();
    sc.states = cfg.cutoff;
    sc.n_levels = cfg.levels;
    sc.threads = cfg.threads;
    return sc;
}

int cmd_spectrum(const RunConfig& cfg, bool crossings_only)
{
    const SweepConfig sc = make_sweep_config(cfg);
    const SpectrumScan scan = sweep(sc);
    const auto events = detect_crossings(scan);
    const fs::path out(cfg.out_dir);
    if (!crossings_only)
    {
        io::write_atomic(out / "spectrum.csv", io::scan_to_csv(scan));
        io::write_atomic(out / "spectrum.svg", io::scan_to_svg(scan));
    }
    io::write_atomic(out / "crossings.json", io::crossings_to_json(events));
    int n_true = 0;
    for (const auto& e : events)
        n_true += e.is_true ? 1 : 0;
    std::cout << "grid points: " << scan.g_grid.size() << ", events: " << events.size()
              << " (" << n_true << " true crossings)\n";
    return 0;
}

int cmd_coeffs(const RunConfig& cfg)
{
    const fs::path out(cfg.out_dir);
    const double n_real = std::round(cfg.bias_ratio);
    if (std::abs(cfg.bias_ratio - n_real) > 1e-9)
    {
        // no symmetry at non-integer bias; report the nullspace evidence
        ModelParams p = cfg.params_fixed_g();
        p.epsilon = 2.0 * cfg.bias_ratio * p.beta();
        std::string diag;
        try
        {
            nullspace_symmetry(static_cast<int>(std::ceil(cfg.bias_ratio)), p,
                               cfg.sector_enum(), std::min(cfg.cutoff, 48));
            diag = "unexpected nullspace at non-integer bias ratio";
        }
        catch (const EmptyNullspace& e)
        {
            diag = e.what();
        }
        std::cout << "{\"error\": \"NoSolution\", \"bias_ratio\": "
                  << io::format_value(cfg.bias_ratio) << ", \"detail\": \"" << diag << "\"}\n";
        return 1;
    }

    const int n = cfg.bias_index();
    const ModelParams params = cfg.params_fixed_g();
    CoeffTable table;
    try
    {
        table = solve_recurrence(n, params);
    }
    catch (const NoSolution& e)
    {
        std::cout << "{\"error\": \"NoSolution\", \"detail\": \"" << e.what() << "\"}\n";
        return 1;
    }
    if (table.gauge_ambiguous())
        std::cout << "{\"warning\": \"GaugeAmbiguity\", \"nullity\": " << table.nullity
                  << "}\n";

    const std::string stem = "coeffs_" + std::to_string(n);
    io::write_atomic(out / (stem + ".json"), io::coeff_table_to_json(table, params));
    if (n <= 3)
    {
        const CoeffTable closed = closed_form_coeffs(n, params);
        io::write_atomic(out / (stem + "_closed.json"),
                         io::coeff_table_to_json(closed, params));
        const double scale = std::max(1.0, closed.max_abs());
        const double err = table.max_abs_diff(closed) / scale;
        std::ostringstream rep;
        rep << "{\"N\": " << n << ", \"max_relative_error\": " << io::format_value(err)
            << "}\n";
        io::write_atomic(out / (stem + "_diff.json"), rep.str());
        std::cout << "max relative error vs closed form: " << err << '\n';
    }
    return 0;
}

int cmd_jsquare(const RunConfig& cfg)
{
    const int n = cfg.bias_index();
    const ModelParams params = cfg.params_fixed_g();
    const Sector sector = cfg.sector_enum();
    const SymmetryOperator j = build_symmetry(n, params, sector, cfg.cutoff);
    const HamiltonianSet ham = build_h0(params, sector, cfg.cutoff);
    const EigenSystem es = eigensolve(ham.h0);

    const int converged = converged_prefix(params, sector, cfg.cutoff, es.values);
    const int n_fit = std::min(converged, std::max(4 * (2 * n + 1), 16));
    const JSquarePoly poly = jsquare_poly(j, es.values, es.vectors, 2 * n, n_fit);

    std::vector<double> analytic;
    const double b = params.beta();
    if (n == 0)
        analytic = {1.0};
    else if (n == 1)
        analytic = {params.delta * params.delta / (64 * params.g * params.g) +
                        params.g * params.g / (4 * b * b),
                    1.0 / (4 * b * b), 1.0 / (4 * b * b)};

    io::write_atomic(fs::path(cfg.out_dir) / ("jsquare_" + std::to_string(n) + ".json"),
                     io::jsquare_to_json(poly, analytic));
    std::cout << "degree " << 2 * n << " fit residual: " << poly.residual << '\n';
    if (n >= 1)
    {
        const JSquarePoly under = jsquare_poly(j, es.values, es.vectors, 2 * n - 1, n_fit);
        std::cout << "degree " << 2 * n - 1 << " refit residual: " << under.residual << '\n';
    }
    return 0;
}

struct Check
{
    std::string name;
    double measured;
    double tolerance;
    bool pass() const { return measured <= tolerance; }
};

int cmd_verify(const RunConfig& cfg)
{
    const int n = cfg.bias_index();
    if (cfg.cutoff < 4 * (n + 2))
        throw InvalidParams("cutoff must be at least 4(N+2) sector states");
    const ModelParams params = cfg.params_fixed_g();
    const Sector sector = cfg.sector_enum();
    const int states = cfg.cutoff;
    const FockBasis basis{sector, states};
    const int full = basis.full_cutoff();

    std::vector<Check> checks;

    // canonical commutators and su(1,1) relations for all three modes
    {
        BosonOp a = annihilation(full);
        auto [ap, am] = bogoliubov_pair(params, full);
        double worst_ccr = 0.0, worst_su11 = 0.0;
        for (const BosonOp* mode : std::initializer_list<const BosonOp*>{&a, &ap, &am})
        {
            const Eigen::MatrixXd bd = mode->mat.transpose();
            const int w = full - 4;
            const Eigen::MatrixXd ccr = mode->mat * bd - bd * mode->mat -
                                        Eigen::MatrixXd::Identity(full, full);
            worst_ccr = std::max(worst_ccr, ccr.topLeftCorner(w, w).cwiseAbs().maxCoeff());
            const auto k = su11_generators(*mode, BosonOp{bd, std::nullopt});
            const Eigen::MatrixXd r1 = k.k0.mat * k.kplus.mat - k.kplus.mat * k.k0.mat -
                                       k.kplus.mat;
            const Eigen::MatrixXd r2 = k.kminus.mat * k.kplus.mat - k.kplus.mat * k.kminus.mat -
                                       2.0 * k.k0.mat;
            const double scale = std::max(1.0, k.kplus.mat.cwiseAbs().maxCoeff());
            worst_su11 =
                std::max(worst_su11, r1.topLeftCorner(w, w).cwiseAbs().maxCoeff() / scale);
            worst_su11 =
                std::max(worst_su11, r2.topLeftCorner(w, w).cwiseAbs().maxCoeff() / scale);
        }
        checks.push_back({"canonical_commutators", worst_ccr, 1e-12});
        checks.push_back({"su11_relations", worst_su11, 1e-12});
    }

    const HamiltonianSet ham = build_h0(params, sector, states);
    checks.push_back({"h0_lie_form", ham.lie_form_deviation, 1e-11});

    const CoeffTable solved = solve_recurrence(n, params);
    checks.push_back({"recurrence_residual", solved.residual, 1e-8});
    checks.push_back({"hermiticity_relations", solved.hermiticity_violation(), 1e-12});

    // top-tier vanishing emerges from the solver
    {
        double worst = 0.0;
        for (int k = 0; k <= 2 * n; ++k)
        {
            worst = std::max(worst, std::abs(solved.get(Elem::A, k, 2 * n - k)));
            worst = std::max(worst, std::abs(solved.get(Elem::D, k, 2 * n - k)));
        }
        checks.push_back({"top_tier_vanishing", worst, 1e-10});
    }

    if (n <= 3)
    {
        const CoeffTable closed = closed_form_coeffs(n, params);
        const double scale = std::max(1.0, closed.max_abs());
        checks.push_back(
            {"closed_form_agreement", solved.max_abs_diff(closed) / scale, 1e-10});
    }
    {
        const CoeffTable null = nullspace_symmetry(n, params, sector, std::min(states, 48));
        checks.push_back({"nullspace_agreement", solved.max_abs_diff(null), 1e-8});
    }

    const SymmetryOperator j = assemble_J(assemble_Q(solved, params, sector, states), solved);
    const int window = window_states(basis, 2 * n + 4);
    {
        const Eigen::MatrixXd inter = j.q.mat * ham.h0.mat - ham.h_tilde.mat * j.q.mat;
        const double rel = block_window_norm(inter, states, window) /
                           (j.q.mat.norm() * ham.h0.mat.norm());
        checks.push_back({"intertwining", rel, 1e-9});

        const Eigen::MatrixXd comm = j.j.mat * ham.h0.mat - ham.h0.mat * j.j.mat;
        const double crel = block_window_norm(comm, states, window) /
                            (j.j.mat.norm() * ham.h0.mat.norm());
        checks.push_back({"commutation", crel, 1e-9});

        checks.push_back({"j_hermiticity",
                          (j.j.mat - j.j.mat.transpose()).cwiseAbs().maxCoeff() /
                              std::max(1.0, j.j.mat.cwiseAbs().maxCoeff()),
                          1e-10});
    }

    bool all_pass = true;
    std::ostringstream out;
    out << "{\n  \"N\": " << n << ",\n  \"checks\": [\n";
    for (size_t i = 0; i < checks.size(); ++i)
    {
        const auto& c = checks[i];
        all_pass = all_pass && c.pass();
        out << "    {\"name\": \"" << c.name << "\", \"pass\": " << (c.pass() ? "true" : "false")
            << ", \"measured\": " << io::format_value(c.measured)
            << ", \"tolerance\": " << io::format_value(c.tolerance) << "}"
            << (i + 1 < checks.size() ? "," : "") << '\n';
        std::cout << (c.pass() ? "[pass] " : "[FAIL] ") << c.name << "  measured "
                  << c.measured << "  tol " << c.tolerance << '\n';
    }
    out << "  ],\n  \"pass\": " << (all_pass ? "true" : "false") << "\n}\n";
    io::write_atomic(fs::path(cfg.out_dir) / "verify.json", out.str());
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;

    // config file first so explicit flags win
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config")
        {
            try
            {
                load_config_file(cfg, argv[i + 1]);
            }
            catch (const std::exception& e)
            {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
        }

    CLI::App app{"Hidden-symmetry toolkit for the asymmetric two-photon Rabi model"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat JSON config file (flags override it)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--delta", cfg.delta, "qubit splitting");
        sub->add_option("--epsilon", cfg.epsilon, "qubit bias (fixed across sweeps)")
            ->each([&](const std::string&) { cfg.epsilon_set = true; });
        sub->add_option("--bias-ratio", cfg.bias_ratio, "epsilon / (2 beta), held fixed")
            ->each([&](const std::string&) { cfg.bias_ratio_set = true; });
        sub->add_option("--g", cfg.g, "coupling for single-point commands");
        sub->add_option("--g-min", cfg.g_min);
        sub->add_option("--g-max", cfg.g_max);
        sub->add_option("--g-steps", cfg.g_steps);
        sub->add_option("--cutoff", cfg.cutoff, "sector states retained");
        sub->add_option("--sector", cfg.sector)->check(CLI::IsMember({"even", "odd"}));
        sub->add_option("--levels", cfg.levels);
        sub->add_option("--out", cfg.out_dir);
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--threads", cfg.threads);
        sub->add_option("--config", config_path)->group(""); // consumed above
    };

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "sweep g, write CSV/SVG/crossings");
    CLI::App* crossings_cmd = app.add_subcommand("crossings", "sweep g, write crossings only");
    CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "solve the coefficient recurrences");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    CLI::App* jsquare_cmd = app.add_subcommand("jsquare", "fit the J^2 polynomial");
    for (CLI::App* sub : {spectrum_cmd, crossings_cmd, coeffs_cmd, verify_cmd, jsquare_cmd})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (spectrum_cmd->parsed())
            return cmd_spectrum(cfg, false);
        if (crossings_cmd->parsed())
            return cmd_spectrum(cfg, true);
        if (coeffs_cmd->parsed())
            return cmd_coeffs(cfg);
        if (verify_cmd->parsed())
            return cmd_verify(cfg);
        if (jsquare_cmd->parsed())
            return cmd_jsquare(cfg);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
