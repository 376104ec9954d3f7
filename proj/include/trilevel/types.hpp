#pragma once

#include <complex>

#include <Eigen/Dense>

#ifndef TRILEVEL_TOLERANCE_SCALE
#define TRILEVEL_TOLERANCE_SCALE 1.0
#endif

namespace trilevel {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;
using Vec3 = Eigen::Matrix<cplx, 3, 1>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;

inline constexpr cplx I{0.0, 1.0};

/// Numerical tolerances used by invariant checks. All of them scale with
/// TRILEVEL_TOLERANCE_SCALE, the single build-time override.
namespace tol {
inline constexpr double scale = TRILEVEL_TOLERANCE_SCALE;

inline constexpr double hermitian = 1e-10 * scale;
inline constexpr double unit_trace = 1e-10 * scale;
inline constexpr double positivity = 1e-9 * scale;
inline constexpr double eta_reality = 1e-10 * scale;
inline constexpr double commutator = 1e-14 * scale;
inline constexpr double nilpotent = 1e-12 * scale;
inline constexpr double trajectory_trace = 1e-9 * scale;
inline constexpr double trajectory_hermitian = 1e-9 * scale;
inline constexpr double eigen_clamp = 1e-9 * scale;
inline constexpr double amplitude_norm = 1e-12 * scale;
inline constexpr double purity_of_pure = 1e-9 * scale;
}  // namespace tol

}  // namespace trilevel
