// Command-line front end: run, figure, sweep, check.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <trilevel/commands.hpp>

using namespace trilevel;

int
main(int argc, char** argv)
{
    CLI::App app{"Driven degenerate three-level system with uniform decoherence"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> tol, t_end, dt_out;
    std::optional<std::string> solver;
    app.add_option("--tol", tol, "Local error tolerance of the adaptive solvers");
    app.add_option("--t-end", t_end, "Final time");
    app.add_option("--dt-out", dt_out, "Output sampling interval");
    app.add_option("--solver", solver,
                   "product | direct_eta | direct_rho | hydrogen_analytic");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Simulate a config file");
    run->add_option("config", config_path, "Config file (key = value)")->required();

    std::string figure_name;
    std::string out_dir = ".";
    auto* figure = app.add_subcommand("figure", "Reproduce a figure preset");
    figure->add_option("name", figure_name, "Preset name, fig1 ... fig17")
        ->required();
    figure->add_option("--out", out_dir, "Output directory");

    std::string sweep_param;
    std::vector<std::string> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "Vary one field parameter");
    sweep->add_option("config", config_path, "Base config file")->required();
    sweep->add_option("--param", sweep_param, "Field key to vary")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")
        ->delimiter(',')
        ->required();

    auto* check = app.add_subcommand("check", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    Overrides overrides;
    overrides.tol = tol;
    overrides.t_end = t_end;
    overrides.dt_out = dt_out;
    if (solver) {
        try {
            overrides.solver = parse_solver(*solver);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return kExitConfig;
        }
    }

    if (*run) {
        return cmd_run(config_path, overrides, std::cout, std::cerr);
    }
    if (*figure) {
        return cmd_figure(figure_name, out_dir, overrides, std::cout, std::cerr);
    }
    if (*sweep) {
        return cmd_sweep(config_path, sweep_param, sweep_values, overrides,
                         std::cout, std::cerr);
    }
    if (*check) {
        return cmd_check(std::cout);
    }
    return kExitConfig;
}
