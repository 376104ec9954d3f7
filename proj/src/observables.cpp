#include <trilevel/observables.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace trilevel {

std::array<double, 3>
spectrum(const DensityMatrix& rho)
{
    const Mat3 h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Mat3> es(h, Eigen::EigenvaluesOnly);
    std::array<double, 3> ev{es.eigenvalues()(0), es.eigenvalues()(1),
                             es.eigenvalues()(2)};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

double
entropy_of_spectrum(const std::array<double, 3>& eigenvalues)
{
    double s = 0.0;
    for (double lambda : eigenvalues) {
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

double
entropy(const DensityMatrix& rho)
{
    return entropy_of_spectrum(spectrum(rho));
}

double
purity(const DensityMatrix& rho)
{
    // Tr rho^2 for Hermitian rho is the squared Frobenius norm.
    return (rho.matrix() * rho.matrix()).trace().real();
}

double
coherence_norm(const CoherenceVector& eta)
{
    return eta.norm();
}

ObservableRecord
observe(double t, const DensityMatrix& rho, const CoherenceVector& eta)
{
    ObservableRecord r;
    r.t = t;
    r.pop1 = rho(0, 0).real();
    r.pop2 = rho(1, 1).real();
    r.pop3 = rho(2, 2).real();
    r.re12 = rho(0, 1).real();
    r.im12 = rho(0, 1).imag();
    r.re13 = rho(0, 2).real();
    r.im13 = rho(0, 2).imag();
    r.re23 = rho(1, 2).real();
    r.im23 = rho(1, 2).imag();
    r.eigenvalues = spectrum(rho);
    r.entropy = entropy_of_spectrum(r.eigenvalues);
    r.purity = purity(rho);
    r.eta_norm = coherence_norm(eta);
    return r;
}

}  // namespace trilevel
