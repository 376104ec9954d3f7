#include <trilevel/oracle.hpp>

#include <algorithm>
#include <cmath>

#include <trilevel/detail/adaptive.hpp>
#include <trilevel/observables.hpp>
#include <trilevel/propagator.hpp>

namespace trilevel {

namespace {

template <int N, std::size_t M>
void to_state(const Eigen::Matrix<cplx, N, 1>& v, std::array<double, M>& x)
{
    for (int i = 0; i < N; ++i) {
        x[2 * i] = v(i).real();
        x[2 * i + 1] = v(i).imag();
    }
}

template <int N, std::size_t M>
Eigen::Matrix<cplx, N, 1> from_state(const std::array<double, M>& x)
{
    Eigen::Matrix<cplx, N, 1> v;
    for (int i = 0; i < N; ++i) {
        v(i) = cplx(x[2 * i], x[2 * i + 1]);
    }
    return v;
}

/// Integrates x' = f(x, t) and records x at every output time.
template <std::size_t M, typename Rhs, typename Record>
void integrate_on_grid(const std::vector<double>& grid, std::array<double, M> x,
                       double tol, Rhs&& rhs, Record&& record)
{
    record(x);
    std::size_t next = 1;
    detail::integrate_adaptive<M>(
        rhs, x, grid.front(), grid.back(), tol,
        std::span<const double>(grid).subspan(1),
        [&](double t, const std::array<double, M>& y) {
            if (next < grid.size() && t == grid[next]) {
                record(y);
                ++next;
            }
            return true;
        });
}

}  // namespace

EtaSeries
integrate_eta_direct(const FieldConfig& cfg, const CoherenceVector& eta0,
                     double t_end, double dt_out, double tol)
{
    cfg.validate();
    using State = std::array<double, 16>;
    EtaSeries out;
    out.grid = output_grid(t_end, dt_out);
    State x;
    to_state<8>(eta0.vector(), x);
    auto rhs = [&cfg](const State& y, State& dydt, double t) {
        const Vec8 eta = from_state<8>(y);
        const Vec8 d = -I * (liouvillian(t, cfg) * eta);
        to_state<8>(d, dydt);
    };
    integrate_on_grid(out.grid, x, tol, rhs, [&](const State& y) {
        out.eta.emplace_back(from_state<8>(y));
    });
    return out;
}

RhoSeries
integrate_rho_direct(const FieldConfig& cfg, const DensityMatrix& rho0,
                     double t_end, double dt_out, double tol)
{
    cfg.validate();
    using State = std::array<double, 18>;
    using Flat = Eigen::Matrix<cplx, 9, 1>;
    RhoSeries out;
    out.grid = output_grid(t_end, dt_out);
    State x;
    to_state<9>(Flat(Eigen::Map<const Flat>(rho0.matrix().data())), x);
    auto rhs = [&cfg](const State& y, State& dydt, double t) {
        const Flat flat = from_state<9>(y);
        const Mat3 rho = Eigen::Map<const Mat3>(flat.data());
        const Mat3 h = hamiltonian(t, cfg);
        const Mat3 d = -I * (h * rho - rho * h) -
            cfg.Gamma * (rho - rho.trace() / 3.0 * Mat3::Identity());
        to_state<9>(Flat(Eigen::Map<const Flat>(d.data())), dydt);
    };
    integrate_on_grid(out.grid, x, tol, rhs, [&](const State& y) {
        const Flat flat = from_state<9>(y);
        out.rho.emplace_back(Mat3(Eigen::Map<const Mat3>(flat.data())));
    });
    return out;
}

ZeroFrequencyError::ZeroFrequencyError()
    : std::invalid_argument(
          "hydrogen closed form needs omega != 0 (static fields are not handled)")
{
}

NotPureError::NotPureError()
    : std::invalid_argument("hydrogen closed form needs a pure initial state")
{
}

AmplitudeTriple
hydrogen_amplitudes(double A, double omega, double t)
{
    if (omega == 0.0) {
        throw ZeroFrequencyError();
    }
    const double theta = std::sqrt(1.5) * (A / omega) * std::sin(omega * t);
    const double c = std::cos(theta);
    AmplitudeTriple a;
    a.s = (1.0 + 2.0 * c) / 3.0;
    a.p = std::sqrt(2.0 / 3.0) * I * std::sin(theta);
    a.d = std::sqrt(2.0) / 3.0 * (c - 1.0);
    return a;
}

Mat3
stark_coupling_matrix()
{
    const double r = 1.0 / std::sqrt(2.0);
    Mat3 m = Mat3::Zero();
    m(0, 1) = m(1, 0) = -1.0;
    m(1, 2) = m(2, 1) = -r;
    return m;
}

StarkBasis
hydrogen_stark_basis()
{
    StarkBasis basis;
    basis.states = {stark_state(InitialKind::stark_plus),
                    stark_state(InitialKind::stark_minus),
                    stark_state(InitialKind::stark_zero)};
    const double f = std::sqrt(1.5);
    basis.factors = {-f, f, 0.0};

    const Mat3 m = stark_coupling_matrix();
    for (int k = 0; k < 3; ++k) {
        const Vec3 r = m * basis.states[k] - basis.factors[k] * basis.states[k];
        basis.residual = std::max(basis.residual, r.cwiseAbs().maxCoeff());
    }

    Eigen::SelfAdjointEigenSolver<Mat3> es(m);
    std::array<double, 3> numeric{es.eigenvalues()(0), es.eigenvalues()(1),
                                  es.eigenvalues()(2)};
    std::array<double, 3> expected = basis.factors;
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 3; ++k) {
        basis.eigenvalue_error =
            std::max(basis.eigenvalue_error, std::abs(numeric[k] - expected[k]));
    }
    return basis;
}

Vec3
hydrogen_state(double A, double omega, const Vec3& psi0, double t)
{
    if (omega == 0.0) {
        throw ZeroFrequencyError();
    }
    static const StarkBasis basis = hydrogen_stark_basis();
    const double tau = std::sin(omega * t) / omega;
    Vec3 psi = Vec3::Zero();
    for (int k = 0; k < 3; ++k) {
        const cplx overlap = basis.states[k].dot(psi0);  // <v_k|psi0>
        psi += std::exp(-I * basis.factors[k] * A * tau) * overlap *
            basis.states[k];
    }
    return psi;
}

DensityMatrix
hydrogen_density(double A, double omega, double Gamma,
                 const DensityMatrix& rho0, double t)
{
    if (omega == 0.0) {
        throw ZeroFrequencyError();
    }
    if (!rho0.valid() || std::abs(purity(rho0) - 1.0) > tol::purity_of_pure) {
        throw NotPureError();
    }
    const Mat3 h = 0.5 * (rho0.matrix() + rho0.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Mat3> es(h);
    const Vec3 psi0 = es.eigenvectors().col(2);  // eigenvalue 1
    const Vec3 psi = hydrogen_state(A, omega, psi0, t);
    const Mat3 third = Mat3::Identity() / 3.0;
    return DensityMatrix(third +
                         std::exp(-Gamma * t) * (psi * psi.adjoint() - third));
}

}  // namespace trilevel
