#include <trilevel/commands.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <ostream>
#include <random>

#include <trilevel/observables.hpp>
#include <trilevel/oracle.hpp>
#include <trilevel/output.hpp>
#include <trilevel/riccati.hpp>

namespace trilevel {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<Solver, std::string_view>> kSolverNames = {
    {Solver::product, "product"},
    {Solver::direct_eta, "direct_eta"},
    {Solver::direct_rho, "direct_rho"},
    {Solver::hydrogen_analytic, "hydrogen_analytic"},
};

const std::vector<std::string> kFieldKeys = {"A",     "Omega", "B",    "omega",
                                             "delta", "Gamma", "sign"};

bool is_known_key(const std::string& key)
{
    static const std::vector<std::string> plain = {
        "preset", "A",       "Omega",  "B",     "omega", "delta",
        "Gamma",  "sign",    "initial", "rho_re", "rho_im", "t_end",
        "dt_out", "tol",     "solver", "csv",   "svg",   "quantities"};
    if (std::find(plain.begin(), plain.end(), key) != plain.end()) {
        return true;
    }
    // outputN.csv / outputN.svg / outputN.quantities
    if (key.rfind("output", 0) != 0) {
        return false;
    }
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 6) {
        return false;
    }
    const std::string index = key.substr(6, dot - 6);
    const std::string field = key.substr(dot + 1);
    return std::all_of(index.begin(), index.end(),
                       [](char c) { return c >= '0' && c <= '9'; }) &&
        (field == "csv" || field == "svg" || field == "quantities");
}

std::vector<std::string> read_quantities(const std::string& key,
                                         const std::string& text)
{
    std::vector<std::string> names = split_list(text);
    for (const auto& n : names) {
        if (!is_quantity(n)) {
            throw ConfigError(key, key + ": unknown quantity '" + n + "'");
        }
    }
    return names;
}

const std::vector<std::string> kDefaultQuantities = {"pop1", "pop2", "pop3"};

/// Maps exceptions onto exit codes and reports them on `err`.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnknownPresetError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const SingularityError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}

void write_outputs(const RunConfig& cfg, const Trajectory& traj,
                   const std::string& title, std::ostream& out)
{
    for (const auto& o : cfg.outputs) {
        if (!o.csv_path.empty()) {
            write_csv_file(o.csv_path, traj);
            out << "wrote " << o.csv_path << " (" << traj.grid.size()
                << " rows)\n";
        }
        if (!o.svg_path.empty()) {
            const auto& q = o.quantities.empty() ? kDefaultQuantities : o.quantities;
            write_svg_file(o.svg_path, plot_quantities(traj, q, title));
            out << "wrote " << o.svg_path << '\n';
        }
    }
}

RunConfig load_run_config(const std::string& path, const Overrides& overrides)
{
    const ConfigDocument doc = parse_config_file(path);
    if (!doc.sections.empty()) {
        throw ConfigError(doc.sections.front().first,
                          "run configs are flat; unexpected section [" +
                              doc.sections.front().first + "]");
    }
    return read_run_config(doc.global, overrides);
}

}  // namespace

std::string_view
to_string(Solver s)
{
    for (const auto& [k, name] : kSolverNames) {
        if (k == s) {
            return name;
        }
    }
    return "unknown";
}

Solver
parse_solver(const std::string& text)
{
    for (const auto& [k, name] : kSolverNames) {
        if (name == text) {
            return k;
        }
    }
    throw ConfigError("solver", "solver: unknown solver '" + text +
                                    "' (expected product, direct_eta, "
                                    "direct_rho or hydrogen_analytic)");
}

void
RunConfig::validate() const
{
    field.validate();
    if (!(t_end > 0.0)) {
        throw ConfigError("t_end", "t_end must be > 0");
    }
    if (!(dt_out > 0.0)) {
        throw ConfigError("dt_out", "dt_out must be > 0");
    }
    if (!(tol > 0.0 && tol <= 1e-3)) {
        throw ConfigError("tol", "tol must satisfy 0 < tol ≤ 1e-3");
    }
    if (solver == Solver::hydrogen_analytic) {
        if (!is_hydrogen_config(field)) {
            throw ConfigError("solver",
                              "solver = hydrogen_analytic needs hydrogen fields "
                              "(A = sqrt2 B, Omega = omega != 0, delta = 0)");
        }
        const DensityMatrix rho0 = initial.density();
        if (std::abs(purity(rho0) - 1.0) > tol::purity_of_pure) {
            throw ConfigError("initial",
                              "solver = hydrogen_analytic needs a pure initial state");
        }
    }
}

RunConfig
read_run_config(const KeyValues& kv, const Overrides& overrides)
{
    for (const auto& [key, value] : kv) {
        if (!is_known_key(key)) {
            throw ConfigError(key, "unknown key '" + key + "'");
        }
    }

    RunConfig cfg;
    if (const auto it = kv.find("preset"); it != kv.end()) {
        const Preset& p = preset(it->second);
        cfg.field = p.config;
        cfg.initial = p.initial;
        cfg.t_end = p.t_end;
        cfg.dt_out = p.dt_out;
    }
    cfg.field = read_field_config(kv, cfg.field);
    cfg.initial = read_initial_state(kv, cfg.initial);
    auto number = [&](const char* key, double& target) {
        if (const auto it = kv.find(key); it != kv.end()) {
            target = parse_number(key, it->second);
        }
    };
    number("t_end", cfg.t_end);
    number("dt_out", cfg.dt_out);
    number("tol", cfg.tol);
    if (const auto it = kv.find("solver"); it != kv.end()) {
        cfg.solver = parse_solver(it->second);
    }

    OutputSpec primary;
    if (const auto it = kv.find("csv"); it != kv.end()) {
        primary.csv_path = it->second;
    }
    if (const auto it = kv.find("svg"); it != kv.end()) {
        primary.svg_path = it->second;
    }
    if (const auto it = kv.find("quantities"); it != kv.end()) {
        primary.quantities = read_quantities("quantities", it->second);
    }
    if (!primary.csv_path.empty() || !primary.svg_path.empty()) {
        cfg.outputs.push_back(primary);
    }
    std::map<int, OutputSpec> numbered;
    for (const auto& [key, value] : kv) {
        if (key.rfind("output", 0) != 0) {
            continue;
        }
        const auto dot = key.find('.');
        const int index = std::stoi(key.substr(6, dot - 6));
        const std::string field = key.substr(dot + 1);
        OutputSpec& o = numbered[index];
        if (field == "csv") {
            o.csv_path = value;
        } else if (field == "svg") {
            o.svg_path = value;
        } else {
            o.quantities = read_quantities(key, value);
        }
    }
    for (auto& [index, o] : numbered) {
        cfg.outputs.push_back(std::move(o));
    }

    if (overrides.tol) cfg.tol = *overrides.tol;
    if (overrides.t_end) cfg.t_end = *overrides.t_end;
    if (overrides.dt_out) cfg.dt_out = *overrides.dt_out;
    if (overrides.solver) cfg.solver = *overrides.solver;

    cfg.validate();
    return cfg;
}

KeyValues
write_run_config(const RunConfig& cfg)
{
    KeyValues kv;
    write_field_config(cfg.field, kv);
    write_initial_state(cfg.initial, kv);
    kv["t_end"] = format_number(cfg.t_end);
    kv["dt_out"] = format_number(cfg.dt_out);
    kv["tol"] = format_number(cfg.tol);
    kv["solver"] = std::string(to_string(cfg.solver));
    for (std::size_t k = 0; k < cfg.outputs.size(); ++k) {
        const auto& o = cfg.outputs[k];
        const std::string prefix = "output" + std::to_string(k + 1) + ".";
        if (!o.csv_path.empty()) kv[prefix + "csv"] = o.csv_path;
        if (!o.svg_path.empty()) kv[prefix + "svg"] = o.svg_path;
        if (!o.quantities.empty()) {
            std::string q;
            for (const auto& n : o.quantities) {
                q += (q.empty() ? "" : ",") + n;
            }
            kv[prefix + "quantities"] = q;
        }
    }
    return kv;
}

Trajectory
simulate(const RunConfig& cfg)
{
    cfg.validate();
    const DensityMatrix rho0 = cfg.initial.density();
    switch (cfg.solver) {
    case Solver::product:
        return run(cfg.field, rho0, cfg.t_end, cfg.dt_out, cfg.tol);
    case Solver::direct_eta: {
        const EtaSeries s = integrate_eta_direct(cfg.field, rho_to_eta(rho0),
                                                 cfg.t_end, cfg.dt_out, cfg.tol);
        std::vector<DensityMatrix> rho;
        for (const auto& e : s.eta) {
            rho.push_back(eta_to_rho(e, rho0.trace().real()));
        }
        return make_trajectory(s.grid, rho);
    }
    case Solver::direct_rho: {
        const RhoSeries s =
            integrate_rho_direct(cfg.field, rho0, cfg.t_end, cfg.dt_out, cfg.tol);
        return make_trajectory(s.grid, s.rho);
    }
    case Solver::hydrogen_analytic: {
        const std::vector<double> grid = output_grid(cfg.t_end, cfg.dt_out);
        const double a = hydrogen_amplitude(cfg.field);
        std::vector<DensityMatrix> rho;
        for (double t : grid) {
            rho.push_back(
                hydrogen_density(a, cfg.field.omega, cfg.field.Gamma, rho0, t));
        }
        return make_trajectory(grid, rho);
    }
    }
    throw std::logic_error("unhandled solver");
}

int
cmd_run(const std::string& config_path, const Overrides& overrides,
        std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_run_config(config_path, overrides);
        if (cfg.outputs.empty()) {
            throw ConfigError("csv", "no output requested (set csv or svg)");
        }
        const Trajectory traj = simulate(cfg);
        write_outputs(cfg, traj, fs::path(config_path).stem().string(), out);
        return int(kExitOk);
    });
}

int
cmd_figure(const std::string& name, const std::string& out_dir,
           const Overrides& overrides, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Preset& p = preset(name);
        RunConfig cfg;
        cfg.field = p.config;
        cfg.initial = p.initial;
        cfg.t_end = overrides.t_end.value_or(p.t_end);
        cfg.dt_out = overrides.dt_out.value_or(p.dt_out);
        cfg.tol = overrides.tol.value_or(1e-10);
        cfg.solver = overrides.solver.value_or(Solver::product);
        cfg.validate();
        const Trajectory traj = simulate(cfg);

        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        const std::string csv = (dir / (name + ".csv")).string();
        write_csv_file(csv, traj);
        out << "wrote " << csv << " (" << traj.grid.size() << " rows)\n";

        struct Panel
        {
            const char* suffix;
            const char* label;
            std::vector<std::string> quantities;
        };
        const std::vector<Panel> panels = {
            {"diagonal", "populations", {"pop1", "pop2", "pop3"}},
            {"offdiag_re", "Re rho_ij", {"re12", "re13", "re23"}},
            {"offdiag_im", "Im rho_ij", {"im12", "im13", "im23"}},
            {"entropy", "S (nats)", {"entropy"}},
        };
        for (const auto& panel : panels) {
            const std::string svg =
                (dir / (name + "_" + panel.suffix + ".svg")).string();
            write_svg_file(svg, plot_quantities(traj, panel.quantities,
                                                name + ": " + panel.label,
                                                panel.label));
            out << "wrote " << svg << '\n';
        }
        return int(kExitOk);
    });
}

int
cmd_sweep(const std::string& config_path, const std::string& param,
          const std::vector<std::string>& values, const Overrides& overrides,
          std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (std::find(kFieldKeys.begin(), kFieldKeys.end(), param) ==
            kFieldKeys.end()) {
            throw ConfigError(param, "sweep parameter '" + param +
                                         "' is not a field key (A, Omega, B, "
                                         "omega, delta, Gamma, sign)");
        }
        if (values.empty()) {
            throw ConfigError(param, "sweep needs at least one value");
        }
        const ConfigDocument doc = parse_config_file(config_path);
        std::string base_csv = fs::path(config_path).stem().string() + ".csv";
        if (const auto it = doc.global.find("csv"); it != doc.global.end()) {
            base_csv = it->second;
        }
        const fs::path base(base_csv);

        std::vector<RunConfig> runs;
        for (std::size_t k = 0; k < values.size(); ++k) {
            KeyValues kv = doc.global;
            kv[param] = values[k];
            RunConfig cfg = read_run_config(kv, overrides);
            OutputSpec o;
            o.csv_path = (base.parent_path() /
                          (base.stem().string() + "_" + param + "_" +
                           std::to_string(k) + base.extension().string()))
                             .string();
            cfg.outputs = {o};
            runs.push_back(std::move(cfg));
        }

        std::vector<std::future<Trajectory>> jobs;
        for (const auto& cfg : runs) {
            jobs.push_back(std::async(std::launch::async,
                                      [&cfg] { return simulate(cfg); }));
        }
        for (std::size_t k = 0; k < runs.size(); ++k) {
            const Trajectory traj = jobs[k].get();
            write_csv_file(runs[k].outputs.front().csv_path, traj);
            out << param << " = " << values[k] << " -> "
                << runs[k].outputs.front().csv_path << '\n';
        }
        return int(kExitOk);
    });
}

std::vector<CheckResult>
run_self_checks(const GeneratorSet& generators)
{
    std::vector<CheckResult> results;
    auto add = [&](std::string name, double measured, double bound) {
        results.push_back({std::move(name), measured <= bound, measured, bound});
    };

    const AlgebraReport algebra = verify_algebra(generators);
    for (const auto& c : algebra.checks) {
        results.push_back({c.name, c.passed, c.error, c.bound});
    }
    results.push_back({"B_plus nilpotency degree == 5",
                       algebra.nilpotency_plus == kNilpotencyDegree,
                       double(algebra.nilpotency_plus), double(kNilpotencyDegree)});

    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> normal;
    double roundtrip = 0.0, purity_gap = 0.0;
    for (int n = 0; n < 1000; ++n) {
        Mat3 g;
        for (int i = 0; i < 9; ++i) {
            g(i / 3, i % 3) = cplx(normal(rng), normal(rng));
        }
        const Mat3 m = g * g.adjoint();
        const DensityMatrix rho(m / m.trace());
        const CoherenceVector eta = rho_to_eta(rho);
        roundtrip = std::max(roundtrip, (eta_to_rho(eta).matrix() - rho.matrix())
                                            .cwiseAbs()
                                            .maxCoeff());
        purity_gap = std::max(
            purity_gap,
            std::abs(purity(rho) - (1.0 / 3.0 + 0.5 * eta.vector().squaredNorm())));
    }
    add("rho <-> eta round trip (1000 random)", roundtrip, 1e-14);
    add("purity identity (1000 random)", purity_gap, 1e-12);

    const Preset& fig1 = preset("fig1");
    const DensityMatrix rho0 = fig1.initial.density();
    const Trajectory prod = run(fig1.config, rho0, 100.0, 0.5, 1e-10);
    const EtaSeries direct =
        integrate_eta_direct(fig1.config, rho_to_eta(rho0), 100.0, 0.5, 1e-10);
    const RhoSeries direct_rho =
        integrate_rho_direct(fig1.config, rho0, 100.0, 0.5, 1e-10);
    double product_err = 0.0, coord_err = 0.0, eig_err = 0.0, mono = 0.0;
    for (std::size_t k = 0; k < prod.grid.size(); ++k) {
        product_err = std::max(
            product_err,
            (prod.rho[k].matrix() - eta_to_rho(direct.eta[k]).matrix()).cwiseAbs().maxCoeff());
        coord_err = std::max(coord_err, (rho_to_eta(direct_rho.rho[k]).vector() -
                                         direct.eta[k].vector())
                                            .cwiseAbs()
                                            .maxCoeff());
        const double x = std::exp(-fig1.config.Gamma * prod.grid[k]);
        const std::array<double, 3> law{(1 + 2 * x) / 3, (1 - x) / 3, (1 - x) / 3};
        for (int i = 0; i < 3; ++i) {
            eig_err = std::max(eig_err,
                               std::abs(prod.observables[k].eigenvalues[i] - law[i]));
        }
        if (k > 0) {
            mono = std::max(mono, prod.observables[k - 1].entropy -
                                      prod.observables[k].entropy);
        }
    }
    add("fig1 product vs direct eta", product_err, 1e-6);
    add("fig1 direct rho vs direct eta", coord_err, 1e-8);
    add("fig1 eigenvalue law", eig_err, 1e-7);
    add("fig1 entropy monotone (max drop)", mono, 1e-10);

    const StarkBasis stark = hydrogen_stark_basis();
    add("Stark eigenvalue factors", stark.eigenvalue_error, 1e-12);
    add("Stark eigenvector residual", stark.residual, 1e-12);

    const FieldConfig hyd = hydrogen_config(1.0, 1.0, 0.0);
    const double two_periods = 4.0 * std::acos(-1.0);
    const Trajectory h = run(hyd, DensityMatrix::level(1), two_periods, 0.05, 1e-12);
    double h_err = 0.0;
    for (std::size_t k = 0; k < h.grid.size(); ++k) {
        const AmplitudeTriple a = hydrogen_amplitudes(1.0, 1.0, h.grid[k]);
        h_err = std::max({h_err, std::abs(h.observables[k].pop1 - std::norm(a.s)),
                          std::abs(h.observables[k].pop2 - std::norm(a.p)),
                          std::abs(h.observables[k].pop3 - std::norm(a.d))});
    }
    add("hydrogen product vs closed form", h_err, 1e-8);

    const Preset& fig16 = preset("fig16");
    const DensityMatrix stark0 = fig16.initial.density();
    const Trajectory frozen = run(fig16.config, stark0, fig16.t_end, 0.1, 1e-12);
    double drift = 0.0;
    for (const auto& r : frozen.rho) {
        drift = std::max(drift, (r.matrix() - stark0.matrix()).cwiseAbs().maxCoeff());
    }
    add("Stark eigenstate frozen (fig16)", drift, 1e-8);

    FieldConfig constant_j;
    constant_j.B = 1.0;  // J = 0.5
    const double j0 = 0.5;
    const double t_max = 0.9 * std::acos(-1.0) / (2.0 * j0);
    const MuTrajectory mus = solve_mu(constant_j, t_max, 1e-12);
    double ric = 0.0;
    for (std::size_t k = 0; k < mus.grid().size(); ++k) {
        const double t = mus.grid()[k];
        const MuValues& m = mus.values()[k];
        ric = std::max({ric, std::abs(m.plus - std::tan(j0 * t)),
                        std::abs(m.minus - 0.5 * std::sin(2 * j0 * t)),
                        std::abs(m.mu - (-2.0 * I * std::log(std::cos(j0 * t))))});
    }
    add("Riccati constant-J closed form", ric, 1e-8);
    return results;
}

int
cmd_check(std::ostream& out, const GeneratorSet& generators)
{
    const std::vector<CheckResult> results = run_self_checks(generators);
    bool ok = true;
    char line[160];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-4s %-42s %12.3e  (bound %.1e)\n",
                      r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                      r.bound);
        out << line;
        ok = ok && r.passed;
    }
    out << (ok ? "all checks passed\n" : "some checks FAILED\n");
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace trilevel
