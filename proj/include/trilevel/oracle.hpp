#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <trilevel/algebra.hpp>
#include <trilevel/fields.hpp>

namespace trilevel {

// Reference solutions that do not go through the exponent functions.

struct EtaSeries
{
    std::vector<double> grid;
    std::vector<CoherenceVector> eta;
};

struct RhoSeries
{
    std::vector<double> grid;
    std::vector<DensityMatrix> rho;
};

/// Direct adaptive integration of i eta' = L(t) eta on output_grid(t_end, dt_out).
EtaSeries integrate_eta_direct(const FieldConfig& cfg,
                               const CoherenceVector& eta0, double t_end,
                               double dt_out, double tol);

/// Direct adaptive integration of
///   rho' = -i [H(t), rho] - Gamma (rho - Tr(rho) I / 3).
RhoSeries integrate_rho_direct(const FieldConfig& cfg, const DensityMatrix& rho0,
                               double t_end, double dt_out, double tol);

/// (s, p, d) amplitudes of the resonantly driven n = 3 hydrogen manifold.
struct AmplitudeTriple
{
    cplx s, p, d;

    Vec3 vector() const { return Vec3(s, p, d); }
    double norm_squared() const
    {
        return std::norm(s) + std::norm(p) + std::norm(d);
    }
};

class ZeroFrequencyError : public std::invalid_argument
{
public:
    ZeroFrequencyError();
};

class NotPureError : public std::invalid_argument
{
public:
    NotPureError();
};

/// Closed form for the 3s start, with theta = sqrt(3/2) (A/omega) sin(omega t):
/// s = (1 + 2 cos theta)/3, p = i sqrt(2/3) sin theta, d = sqrt2/3 (cos theta - 1).
AmplitudeTriple hydrogen_amplitudes(double A, double omega, double t);

/// Coefficient matrix of the Stark coupling per unit amplitude:
/// [[0,-1,0],[-1,0,-1/sqrt2],[0,-1/sqrt2,0]].
Mat3 stark_coupling_matrix();

struct StarkBasis
{
    std::array<Vec3, 3> states;      // plus, minus, zero parabolic states
    std::array<double, 3> factors;   // eigenvalues / A: -sqrt(3/2), +sqrt(3/2), 0
    /// max |M v - f v| and max |f - numeric eigenvalue| over the three states.
    double residual = 0.0;
    double eigenvalue_error = 0.0;
};

/// Parabolic states and eigenvalue factors, confirmed against a numerical
/// diagonalisation of stark_coupling_matrix().
StarkBasis hydrogen_stark_basis();

/// Pure-state Schroedinger evolution under cos(omega t) A M, expanded in the
/// parabolic basis.
Vec3 hydrogen_state(double A, double omega, const Vec3& psi0, double t);

/// rho(t) = I/3 + exp(-Gamma t) (|psi(t)><psi(t)| - I/3) for a pure rho0.
DensityMatrix hydrogen_density(double A, double omega, double Gamma,
                               const DensityMatrix& rho0, double t);

}  // namespace trilevel
