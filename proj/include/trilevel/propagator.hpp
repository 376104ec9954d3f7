#pragma once

#include <stdexcept>
#include <vector>

#include <trilevel/algebra.hpp>
#include <trilevel/fields.hpp>
#include <trilevel/observables.hpp>
#include <trilevel/riccati.hpp>

namespace trilevel {

enum class Generator {
    plus,
    minus,
    z,
};

/// exp(c G). B_plus / B_minus use the terminating power series; B_z uses
/// scaling and squaring.
Mat8 exp_generator(cplx c, Generator g);

/// exp(-i mu+ B+) exp(-i mu- B-) exp(-i mu Bz): the field part of the
/// propagator on one chart.
Mat8 chart_propagator(const MuValues& m);

/// eta(t) = exp(-Gamma t) exp(-i mu+ B+) exp(-i mu- B-) exp(-i mu Bz) eta0
/// for a chart starting at 0. Throws std::out_of_range outside the grid.
CoherenceVector evolve_eta(const CoherenceVector& eta0, const MuTrajectory& mus,
                           double Gamma, double t);

struct Trajectory
{
    std::vector<double> grid;
    std::vector<DensityMatrix> rho;
    std::vector<CoherenceVector> eta;
    std::vector<ObservableRecord> observables;
    std::vector<double> chart_starts;  // 0 plus every restart time
};

/// Unrecoverable failure of the product solution.
class SolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Charts are restarted once chart_measure() exceeds this.
inline constexpr double kDefaultChartBound = 2.0;
inline constexpr double kMinSegment = 1e-6;

struct RunOptions
{
    double chart_bound = kDefaultChartBound;
    /// Additional restart times, for checking that restarts compose.
    std::vector<double> checkpoints;
};

/// Uniform output grid 0, dt, 2dt, ... with ceil(t_end/dt) + 1 samples; the
/// last sample is clamped to t_end.
std::vector<double> output_grid(double t_end, double dt_out);

Trajectory run(const FieldConfig& cfg, const DensityMatrix& rho0, double t_end,
               double dt_out, double tol, const RunOptions& options = {});

/// Builds a Trajectory (rho, eta, observables) from density matrices.
Trajectory make_trajectory(const std::vector<double>& grid,
                           const std::vector<DensityMatrix>& rho);

}  // namespace trilevel
