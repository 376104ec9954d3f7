#include <doctest.h>

#include <cmath>

#include <trilevel/observables.hpp>

#include "support.hpp"

using namespace trilevel;

TEST_CASE("entropy of pure and mixed states")
{
    CHECK(entropy(DensityMatrix::level(1)) == 0.0);
    CHECK(entropy(DensityMatrix::mixed()) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(std::log(3.0) == doctest::Approx(1.0986).epsilon(1e-4));
    CHECK(entropy(testing::random_pure()) < 1e-6);
}

TEST_CASE("entropy of the half-decayed spectrum")
{
    // -sum l ln l for {2/3, 1/6, 1/6}, evaluated in long double.
    const long double expected =
        -(2.0L / 3) * std::log(2.0L / 3) - 2 * (1.0L / 6) * std::log(1.0L / 6);
    CHECK(static_cast<double>(expected) ==
          doctest::Approx((2.0 / 3) * std::log(1.5) + std::log(6.0) / 3).epsilon(1e-15));
    CHECK(static_cast<double>(expected) == doctest::Approx(0.8676).epsilon(1e-4));

    Mat3 m = Mat3::Zero();
    m.diagonal() << 1.0 / 6, 2.0 / 3, 1.0 / 6;
    CHECK(entropy(DensityMatrix(m)) ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
}

TEST_CASE("clamping keeps entropy finite for slightly negative eigenvalues")
{
    Mat3 m = Mat3::Zero();
    m.diagonal() << 1.0 + 1e-12, -1e-12, 0.0;
    const double s = entropy(DensityMatrix(m));
    CHECK(std::isfinite(s));
    CHECK(s >= 0.0);
    CHECK(s < 1e-10);
}

TEST_CASE("spectrum")
{
    const auto e1 = spectrum(DensityMatrix::level(1));
    CHECK(e1[0] == doctest::Approx(1.0));
    CHECK(std::abs(e1[1]) < 1e-15);
    CHECK(std::abs(e1[2]) < 1e-15);
    for (double v : spectrum(DensityMatrix::mixed())) {
        CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    for (int n = 0; n < 100; ++n) {
        const DensityMatrix rho = testing::random_density();
        const auto ev = spectrum(rho);
        CHECK(ev[0] >= ev[1]);
        CHECK(ev[1] >= ev[2]);
        CHECK(std::abs(ev[0] + ev[1] + ev[2] - rho.trace().real()) <= 1e-10);
    }
}

TEST_CASE("purity and coherence norm")
{
    CHECK(purity(DensityMatrix::level(2)) == doctest::Approx(1.0));
    CHECK(purity(DensityMatrix::mixed()) == doctest::Approx(1.0 / 3.0));
    CHECK(coherence_norm(rho_to_eta(DensityMatrix::mixed())) < 1e-16);
    const DensityMatrix pure = testing::random_pure();
    CHECK(coherence_norm(rho_to_eta(pure)) ==
          doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("observation record invariants")
{
    for (int n = 0; n < 200; ++n) {
        const DensityMatrix rho = testing::random_density();
        const CoherenceVector eta = rho_to_eta(rho);
        const ObservableRecord r = observe(1.5, rho, eta);
        CHECK(r.t == 1.5);
        CHECK(std::abs(r.pop1 + r.pop2 + r.pop3 - 1.0) <= 1e-9);
        const double sum_sq = r.eigenvalues[0] * r.eigenvalues[0] +
            r.eigenvalues[1] * r.eigenvalues[1] + r.eigenvalues[2] * r.eigenvalues[2];
        CHECK(std::abs(r.purity - sum_sq) <= 1e-10);
        CHECK(std::abs(r.purity - (1.0 / 3.0 + 0.5 * r.eta_norm * r.eta_norm)) <= 1e-10);
        CHECK(r.entropy >= 0.0);
        CHECK(r.entropy <= std::log(3.0) + 1e-12);
        CHECK(r.re12 == rho(0, 1).real());
        CHECK(r.im23 == rho(1, 2).imag());
    }
}
