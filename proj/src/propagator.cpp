#include <trilevel/propagator.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace trilevel {

namespace {

/// Powers B^k / k! for k < kNilpotencyDegree.
std::array<Mat8, kNilpotencyDegree> scaled_powers(const Mat8& b)
{
    std::array<Mat8, kNilpotencyDegree> out;
    out[0] = Mat8::Identity();
    for (int k = 1; k < kNilpotencyDegree; ++k) {
        out[k] = out[k - 1] * b / double(k);
    }
    return out;
}

const std::array<Mat8, kNilpotencyDegree>& plus_series()
{
    static const auto s = scaled_powers(GeneratorSet::standard().Bplus);
    return s;
}

const std::array<Mat8, kNilpotencyDegree>& minus_series()
{
    static const auto s = scaled_powers(GeneratorSet::standard().Bminus);
    return s;
}

Mat8 nilpotent_exp(cplx c, const std::array<Mat8, kNilpotencyDegree>& series)
{
    Mat8 out = series[0];
    cplx ck = 1.0;
    for (int k = 1; k < kNilpotencyDegree; ++k) {
        ck *= c;
        out += ck * series[k];
    }
    return out;
}

Mat8 scaling_squaring_exp(const Mat8& a)
{
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Mat8 scaled = a / std::ldexp(1.0, squarings);

    Mat8 sum = Mat8::Identity();
    Mat8 term = Mat8::Identity();
    for (int k = 1; k < 40; ++k) {
        term = term * scaled / double(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-17 * sum.cwiseAbs().maxCoeff()) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

}  // namespace

Mat8
exp_generator(cplx c, Generator g)
{
    switch (g) {
    case Generator::plus:
        return nilpotent_exp(c, plus_series());
    case Generator::minus:
        return nilpotent_exp(c, minus_series());
    case Generator::z:
        return scaling_squaring_exp(c * GeneratorSet::standard().Bz);
    }
    throw std::logic_error("unhandled generator");
}

Mat8
chart_propagator(const MuValues& m)
{
    return exp_generator(-I * m.plus, Generator::plus) *
        exp_generator(-I * m.minus, Generator::minus) *
        exp_generator(-I * m.mu, Generator::z);
}

CoherenceVector
evolve_eta(const CoherenceVector& eta0, const MuTrajectory& mus, double Gamma,
           double t)
{
    const Vec8 v = chart_propagator(mus.at(t)) * eta0.vector();
    return CoherenceVector(std::exp(-Gamma * t) * v);
}

std::vector<double>
output_grid(double t_end, double dt_out)
{
    if (!(t_end > 0.0) || !(dt_out > 0.0)) {
        throw std::invalid_argument("output grid needs t_end > 0 and dt_out > 0");
    }
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt_out - 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        grid[k] = std::min(double(k) * dt_out, t_end);
    }
    grid.back() = t_end;
    return grid;
}

Trajectory
make_trajectory(const std::vector<double>& grid,
                const std::vector<DensityMatrix>& rho)
{
    Trajectory traj;
    traj.grid = grid;
    traj.rho = rho;
    traj.chart_starts = {0.0};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        traj.eta.push_back(rho_to_eta(rho[k]));
        traj.observables.push_back(observe(grid[k], rho[k], traj.eta.back()));
    }
    return traj;
}

Trajectory
run(const FieldConfig& cfg, const DensityMatrix& rho0, double t_end,
    double dt_out, double tol, const RunOptions& options)
{
    cfg.validate();
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be > 0");
    }
    const std::vector<double> grid = output_grid(t_end, dt_out);
    const CoherenceVector eta0 = rho_to_eta(rho0);
    const double trace = rho0.trace().real();

    std::vector<double> checkpoints;
    for (double c : options.checkpoints) {
        if (c > 0.0 && c < t_end) {
            checkpoints.push_back(c);
        }
    }
    std::sort(checkpoints.begin(), checkpoints.end());

    Trajectory traj;
    traj.grid = grid;
    traj.chart_starts.push_back(0.0);

    Mat8 accumulated = Mat8::Identity();
    double seg_start = 0.0;
    std::size_t next_out = 0;
    auto next_checkpoint = checkpoints.begin();

    auto emit = [&](double t, const Mat8& propagator) {
        const CoherenceVector eta(std::exp(-cfg.Gamma * t) *
                                  (propagator * eta0.vector()));
        const DensityMatrix rho = eta_to_rho(eta, trace);
        traj.rho.push_back(rho);
        traj.eta.push_back(eta);
        traj.observables.push_back(observe(t, rho, eta));
    };

    while (next_out < grid.size()) {
        while (next_checkpoint != checkpoints.end() &&
               *next_checkpoint <= seg_start) {
            ++next_checkpoint;
        }
        MuOptions mu_opts;
        mu_opts.t_start = seg_start;
        mu_opts.t_end =
            next_checkpoint != checkpoints.end() ? *next_checkpoint : t_end;
        mu_opts.tol = tol;
        mu_opts.chart_bound = options.chart_bound;
        for (std::size_t k = next_out; k < grid.size(); ++k) {
            if (grid[k] > seg_start && grid[k] < mu_opts.t_end) {
                mu_opts.stop_times.push_back(grid[k]);
            }
        }

        const MuSolveResult solved = integrate_mu(cfg, mu_opts);
        const MuTrajectory& mus = solved.trajectory;
        std::size_t last = mus.grid().size() - 1;
        if (solved.stop == MuStop::blowup) {
            // Restart from the last sample still well inside the chart.
            std::size_t k = last;
            while (k > 0 && chart_measure(mus.values()[k]) > kDefaultChartBound) {
                --k;
            }
            last = k > 0 ? k : last;
        }
        const double seg_end = mus.grid()[last];
        if (solved.stop == MuStop::blowup && seg_end - seg_start < kMinSegment) {
            throw SolverError("exponent chart singular again within " +
                              std::to_string(kMinSegment) +
                              " of the restart at t = " + std::to_string(seg_start));
        }

        while (next_out < grid.size() && grid[next_out] <= seg_end) {
            const double t = grid[next_out];
            emit(t, chart_propagator(mus.at(t)) * accumulated);
            ++next_out;
        }
        accumulated = chart_propagator(mus.values()[last]) * accumulated;
        seg_start = seg_end;
        if (next_out < grid.size()) {
            traj.chart_starts.push_back(seg_start);
        }
    }
    return traj;
}

}  // namespace trilevel
