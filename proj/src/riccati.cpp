#include <trilevel/riccati.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <trilevel/detail/adaptive.hpp>

namespace trilevel {

namespace {

using State = std::array<double, 6>;

MuValues unpack(const State& x)
{
    return {cplx(x[0], x[1]), cplx(x[2], x[3]), cplx(x[4], x[5])};
}

void pack(const MuValues& m, State& x)
{
    x = {m.plus.real(), m.plus.imag(), m.minus.real(),
         m.minus.imag(), m.mu.real(), m.mu.imag()};
}

MuValues hermite(double h, double s, const MuValues& y0, const MuValues& d0,
                 const MuValues& y1, const MuValues& d1)
{
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    auto f = [&](cplx a0, cplx b0, cplx a1, cplx b1) {
        return h00 * a0 + h10 * h * b0 + h01 * a1 + h11 * h * b1;
    };
    return {f(y0.plus, d0.plus, y1.plus, d1.plus),
            f(y0.minus, d0.minus, y1.minus, d1.minus),
            f(y0.mu, d0.mu, y1.mu, d1.mu)};
}

MuValues hermite_derivative(double h, double s, const MuValues& y0,
                            const MuValues& d0, const MuValues& y1,
                            const MuValues& d1)
{
    const double s2 = s * s;
    const double g00 = (6 * s2 - 6 * s) / h;
    const double g10 = 3 * s2 - 4 * s + 1;
    const double g01 = (-6 * s2 + 6 * s) / h;
    const double g11 = 3 * s2 - 2 * s;
    auto f = [&](cplx a0, cplx b0, cplx a1, cplx b1) {
        return g00 * a0 + g10 * b0 + g01 * a1 + g11 * b1;
    };
    return {f(y0.plus, d0.plus, y1.plus, d1.plus),
            f(y0.minus, d0.minus, y1.minus, d1.minus),
            f(y0.mu, d0.mu, y1.mu, d1.mu)};
}

double max_dev(const MuValues& a, const MuValues& b)
{
    return std::max({std::abs(a.plus - b.plus), std::abs(a.minus - b.minus),
                     std::abs(a.mu - b.mu)});
}

double magnitude(const MuValues& m)
{
    return std::max({std::abs(m.plus), std::abs(m.minus), std::abs(m.mu)});
}

// Bound on the dense-output residual at the quarter points of a step, as a
// multiple of tol. Relaxed by |mu+|^2 once the chart approaches a blow-up.
constexpr double kResidualFactor = 50.0;

}  // namespace

MuValues
mu_rhs(double t, const MuValues& m, const FieldConfig& cfg)
{
    const double eps = epsilon(t, cfg);
    const double j = j_coupling(t, cfg);
    MuValues d;
    d.plus = -I * eps * m.plus + j * (1.0 + m.plus * m.plus);
    d.mu = eps + 2.0 * I * j * m.plus;
    d.minus = j + I * d.mu * m.minus;
    return d;
}

void
MuTrajectory::append(double t, const MuValues& value, const MuValues& derivative)
{
    if (!grid_.empty() && !(t > grid_.back())) {
        throw std::invalid_argument("MuTrajectory grid must be strictly increasing");
    }
    grid_.push_back(t);
    values_.push_back(value);
    derivs_.push_back(derivative);
}

std::size_t
MuTrajectory::locate(double t) const
{
    if (grid_.empty() || t < grid_.front() || t > grid_.back()) {
        throw std::out_of_range("time " + std::to_string(t) +
                                " outside the exponent trajectory");
    }
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    return it == grid_.end() ? grid_.size() - 1
                             : static_cast<std::size_t>(it - grid_.begin());
}

MuValues
MuTrajectory::at(double t) const
{
    const std::size_t k = locate(t);
    if (grid_[k] == t) {
        return values_[k];
    }
    if (grid_[k - 1] == t) {
        return values_[k - 1];
    }
    const double h = grid_[k] - grid_[k - 1];
    const double s = (t - grid_[k - 1]) / h;
    return hermite(h, s, values_[k - 1], derivs_[k - 1], values_[k], derivs_[k]);
}

MuValues
MuTrajectory::derivative_at(double t) const
{
    const std::size_t k = locate(t);
    if (grid_[k] == t) {
        return derivs_[k];
    }
    if (k == 0) {
        return derivs_[0];
    }
    const double h = grid_[k] - grid_[k - 1];
    const double s = (t - grid_[k - 1]) / h;
    return hermite_derivative(h, s, values_[k - 1], derivs_[k - 1], values_[k],
                              derivs_[k]);
}

SingularityError::SingularityError(double t_star)
    : std::runtime_error("exponent chart singular near t = " +
                         std::to_string(t_star)),
      t_star_(t_star)
{
}

double
chart_measure(const MuValues& m)
{
    return std::max({std::abs(m.plus), std::abs(m.minus), std::abs(m.mu.imag())});
}

MuSolveResult
integrate_mu(const FieldConfig& cfg, const MuOptions& options)
{
    if (!(options.t_end > options.t_start)) {
        throw std::invalid_argument("exponent solve needs t_end > t_start");
    }
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("exponent solve needs tol > 0");
    }

    MuSolveResult result;
    MuTrajectory& traj = result.trajectory;
    const MuValues zero{};

    std::vector<double> stops;
    for (double s : options.stop_times) {
        if (s > options.t_start && s < options.t_end) {
            stops.push_back(s);
        }
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(options.t_end);

    if (cfg.A == 0.0 && cfg.B == 0.0) {
        traj.append(options.t_start, zero, zero);
        for (double s : stops) {
            traj.append(s, zero, zero);
        }
        return result;
    }

    traj.append(options.t_start, zero, mu_rhs(options.t_start, zero, cfg));
    State x{};
    auto system = [&cfg](const State& y, State& dydt, double t) {
        pack(mu_rhs(t, unpack(y), cfg), dydt);
    };
    detail::integrate_adaptive<6>(
        system, x, options.t_start, options.t_end, options.tol, stops,
        [&](double ta, const State& xa, double tb, const State& xb) {
            const MuValues ya = unpack(xa);
            const MuValues yb = unpack(xb);
            const MuValues da = mu_rhs(ta, ya, cfg);
            const MuValues db = mu_rhs(tb, yb, cfg);
            const double scale =
                std::max({1.0, std::norm(ya.plus), std::norm(yb.plus)});
            if (!std::isfinite(scale)) {
                return true;
            }
            const double h = tb - ta;
            // Rounding of t and mu, amplified by 1/h in the interpolant slope.
            const double rounding = 8 * std::numeric_limits<double>::epsilon() *
                (std::max(1.0, std::abs(tb)) * std::max(magnitude(da), magnitude(db)) +
                 std::max(magnitude(ya), magnitude(yb))) / h;
            const double bound = kResidualFactor * options.tol * scale + rounding;
            for (double s : {0.25, 0.5, 0.75}) {
                const MuValues y = hermite(h, s, ya, da, yb, db);
                const MuValues d = hermite_derivative(h, s, ya, da, yb, db);
                if (max_dev(d, mu_rhs(ta + s * h, y, cfg)) > bound) {
                    return false;
                }
            }
            return true;
        },
        [&](double t, const State& y) {
            const MuValues m = unpack(y);
            if (std::abs(m.plus) > options.blowup_threshold ||
                !std::isfinite(std::abs(m.plus))) {
                result.stop = MuStop::blowup;
                result.stop_time = t;
                return false;
            }
            traj.append(t, m, mu_rhs(t, m, cfg));
            if (chart_measure(m) > options.chart_bound) {
                result.stop = MuStop::chart_bound;
                result.stop_time = t;
                return false;
            }
            return true;
        });
    return result;
}

MuTrajectory
solve_mu(const FieldConfig& cfg, double t_end, double tol)
{
    MuOptions options;
    options.t_end = t_end;
    options.tol = tol;
    MuSolveResult r = integrate_mu(cfg, options);
    if (r.stop == MuStop::blowup) {
        throw SingularityError(r.stop_time);
    }
    return std::move(r.trajectory);
}

}  // namespace trilevel
