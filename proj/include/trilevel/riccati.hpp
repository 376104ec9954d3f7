#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include <trilevel/fields.hpp>
#include <trilevel/types.hpp>

namespace trilevel {

/// Exponent functions of the product propagator at one time.
struct MuValues
{
    cplx plus{};
    cplx minus{};
    cplx mu{};
};

/// Right-hand side of the exponent system at time t:
///   mu+' = -i eps mu+ + J (1 + mu+^2)
///   mu'  = eps + 2 i J mu+
///   mu-' = J + i mu' mu-
MuValues mu_rhs(double t, const MuValues& m, const FieldConfig& cfg);

/// Sampled exponent functions on the solver's accepted grid, with cubic
/// Hermite dense output between samples. The chart starts at grid().front()
/// where all three functions vanish.
class MuTrajectory
{
public:
    MuTrajectory() = default;

    void append(double t, const MuValues& value, const MuValues& derivative);

    bool empty() const { return grid_.empty(); }
    double t_start() const { return grid_.front(); }
    double t_end() const { return grid_.back(); }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<MuValues>& values() const { return values_; }
    const std::vector<MuValues>& derivatives() const { return derivs_; }

    /// Exact at grid nodes; throws std::out_of_range outside [t_start, t_end].
    MuValues at(double t) const;
    /// Time derivative of the dense-output interpolant.
    MuValues derivative_at(double t) const;

private:
    std::size_t locate(double t) const;

    std::vector<double> grid_;
    std::vector<MuValues> values_;
    std::vector<MuValues> derivs_;
};

/// |mu+| grew past the blow-up threshold at time(): the product chart is
/// singular there and must be restarted.
class SingularityError : public std::runtime_error
{
public:
    explicit SingularityError(double t_star);
    double time() const { return t_star_; }

private:
    double t_star_;
};

inline constexpr double kBlowupThreshold = 1e6;

struct MuOptions
{
    double t_start = 0.0;
    double t_end = 1.0;
    double tol = 1e-10;
    /// |mu+| above this is a chart singularity.
    double blowup_threshold = kBlowupThreshold;
    /// Stop cleanly once max(|mu+|, |mu-|, |Im mu|) exceeds this.
    double chart_bound = std::numeric_limits<double>::infinity();
    /// Times the solver must land on exactly (sorted).
    std::vector<double> stop_times;
};

enum class MuStop {
    completed,
    chart_bound,
    blowup,
};

struct MuSolveResult
{
    /// Every sample is below the blow-up threshold. After a chart_bound stop
    /// the last sample is the first one past the bound.
    MuTrajectory trajectory;
    MuStop stop = MuStop::completed;
    double stop_time = 0.0;  // time of the first sample past a threshold
};

/// Largest of |mu+|, |mu-| and |Im mu|: the size that controls the
/// conditioning of the product of exponentials.
double chart_measure(const MuValues& m);

MuSolveResult integrate_mu(const FieldConfig& cfg, const MuOptions& options);

/// Solves the exponent system on [0, t_end]. Throws SingularityError when
/// |mu+| crosses kBlowupThreshold.
MuTrajectory solve_mu(const FieldConfig& cfg, double t_end, double tol);

}  // namespace trilevel
