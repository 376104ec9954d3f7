#pragma once

#include <array>

#include <trilevel/algebra.hpp>

namespace trilevel {

struct ObservableRecord
{
    double t = 0.0;
    double pop1 = 0.0, pop2 = 0.0, pop3 = 0.0;
    double re12 = 0.0, im12 = 0.0;
    double re13 = 0.0, im13 = 0.0;
    double re23 = 0.0, im23 = 0.0;
    double entropy = 0.0;
    double purity = 0.0;
    std::array<double, 3> eigenvalues{};  // descending
    double eta_norm = 0.0;
};

/// Real eigenvalues of the Hermitian part of rho, sorted descending.
std::array<double, 3> spectrum(const DensityMatrix& rho);

/// Von Neumann entropy in nats. Eigenvalues are clamped to [0, 1] first
/// (0 ln 0 = 0).
double entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const std::array<double, 3>& eigenvalues);

double purity(const DensityMatrix& rho);
double coherence_norm(const CoherenceVector& eta);

ObservableRecord observe(double t, const DensityMatrix& rho,
                         const CoherenceVector& eta);

}  // namespace trilevel
