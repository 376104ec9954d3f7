#pragma once

#include <random>

#include <trilevel/algebra.hpp>

namespace trilevel::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(0x5eed);
    return engine;
}

inline Mat3 random_complex3()
{
    std::normal_distribution<double> n;
    Mat3 m;
    for (int i = 0; i < 9; ++i) {
        m(i / 3, i % 3) = cplx(n(rng()), n(rng()));
    }
    return m;
}

/// G G^dagger / Tr: Hermitian, positive, unit trace.
inline DensityMatrix random_density()
{
    const Mat3 g = random_complex3();
    const Mat3 m = g * g.adjoint();
    return DensityMatrix(m / m.trace());
}

inline DensityMatrix random_pure()
{
    std::normal_distribution<double> n;
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        v(i) = cplx(n(rng()), n(rng()));
    }
    return DensityMatrix::pure(v);
}

template <typename A, typename B>
double max_diff(const A& a, const B& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace trilevel::testing
