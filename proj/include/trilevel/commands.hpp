#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <trilevel/algebra.hpp>
#include <trilevel/config.hpp>
#include <trilevel/fields.hpp>
#include <trilevel/propagator.hpp>

namespace trilevel {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfig = 2,
    kExitSolver = 3,
    kExitIo = 4,
};

enum class Solver {
    product,
    direct_eta,
    direct_rho,
    hydrogen_analytic,
};

std::string_view to_string(Solver s);
Solver parse_solver(const std::string& text);

struct OutputSpec
{
    std::string csv_path;
    std::string svg_path;
    std::vector<std::string> quantities;
};

struct RunConfig
{
    FieldConfig field;
    InitialState initial;
    double t_end = 100.0;
    double dt_out = 0.05;
    double tol = 1e-10;
    Solver solver = Solver::product;
    std::vector<OutputSpec> outputs;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Command-line overrides; they win over file keys.
struct Overrides
{
    std::optional<double> tol;
    std::optional<double> t_end;
    std::optional<double> dt_out;
    std::optional<Solver> solver;
};

/// Builds a RunConfig from flat keys. "preset = figN" seeds the field,
/// initial state and time range from the preset table; "outputN.csv" /
/// "outputN.svg" / "outputN.quantities" add further outputs.
RunConfig read_run_config(const KeyValues& kv, const Overrides& overrides = {});
KeyValues write_run_config(const RunConfig& cfg);

/// Runs the configured solver and returns the sampled trajectory.
Trajectory simulate(const RunConfig& cfg);

int cmd_run(const std::string& config_path, const Overrides& overrides,
            std::ostream& out, std::ostream& err);

/// Writes <name>.csv plus one SVG per panel group (diagonal, off-diagonal
/// real parts, off-diagonal imaginary parts, entropy) into out_dir.
int cmd_figure(const std::string& name, const std::string& out_dir,
               const Overrides& overrides, std::ostream& out, std::ostream& err);

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<std::string>& values, const Overrides& overrides,
              std::ostream& out, std::ostream& err);

struct CheckResult
{
    std::string name;
    bool passed;
    double measured;
    double bound;
};

/// Invariant suite: algebra, conversions, oracle cross-validation and the
/// eigenvalue/entropy/purity laws. Algebra checks use `generators`.
std::vector<CheckResult> run_self_checks(
    const GeneratorSet& generators = GeneratorSet::standard());

int cmd_check(std::ostream& out,
              const GeneratorSet& generators = GeneratorSet::standard());

}  // namespace trilevel
