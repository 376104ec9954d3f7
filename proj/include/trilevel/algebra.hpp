#pragma once

#include <string>
#include <vector>

#include <trilevel/types.hpp>

namespace trilevel {

/// 3x3 density matrix. Construction does not validate; use checked() or the
/// error accessors when the input is untrusted.
class DensityMatrix
{
public:
    DensityMatrix() : m_(Mat3::Identity() / 3.0) {}
    explicit DensityMatrix(const Mat3& m) : m_(m) {}

    /// Throws std::invalid_argument when any invariant is violated.
    static DensityMatrix checked(const Mat3& m);
    static DensityMatrix level(int k);  // |k><k|, k in {1,2,3}
    static DensityMatrix pure(const Vec3& psi);
    static DensityMatrix mixed() { return DensityMatrix(); }

    const Mat3& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }
    cplx trace() const { return m_.trace(); }

    double hermiticity_error() const;
    double trace_error() const;
    double min_eigenvalue() const;
    bool valid() const;

private:
    Mat3 m_;
};

/// The eight components of Eq. (4) in their literal complex form; for a
/// Hermitian rho, entries 1,2,3,5,7 are real and 4,6,8 purely imaginary.
class CoherenceVector
{
public:
    CoherenceVector() : v_(Vec8::Zero()) {}
    explicit CoherenceVector(const Vec8& v) : v_(v) {}

    const Vec8& vector() const { return v_; }
    cplx operator[](int i) const { return v_(i); }
    double norm() const { return v_.norm(); }

    /// Largest violation of the real/imaginary pattern.
    double reality_error() const;

private:
    Vec8 v_;
};

struct GeneratorSet
{
    Mat3 Ax, Ay, Az;
    Mat8 Bx, By, Bz;
    Mat8 Bplus, Bminus;

    /// The matrices exactly as tabulated for the three-level problem.
    static const GeneratorSet& standard();
    /// Rebuilds B_plus / B_minus after Bx or By were modified.
    void refresh_ladders();
};

/// Nilpotency degree of B_plus and B_minus: (B_pm)^k = 0 for k = 5.
inline constexpr int kNilpotencyDegree = 5;

CoherenceVector rho_to_eta(const Mat3& rho);
inline CoherenceVector rho_to_eta(const DensityMatrix& rho)
{
    return rho_to_eta(rho.matrix());
}

Mat3 eta_to_matrix(const CoherenceVector& eta, cplx trace);
DensityMatrix eta_to_rho(const CoherenceVector& eta, double trace = 1.0);

/// XY - YX; throws std::invalid_argument on a shape mismatch.
Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& y);

struct AlgebraCheck
{
    std::string name;
    bool passed;
    double error;
    double bound;
};

struct AlgebraReport
{
    std::vector<AlgebraCheck> checks;
    int nilpotency_plus = -1;   // -1: not nilpotent within 8 powers
    int nilpotency_minus = -1;

    bool all_passed() const;
};

/// Smallest k <= 8 with M^k == 0 (entrywise within tol::nilpotent), or -1.
int nilpotency_degree(const Mat8& m);

AlgebraReport verify_algebra(const GeneratorSet& g = GeneratorSet::standard());

}  // namespace trilevel
