#include <trilevel/algebra.hpp>

#include <cmath>
#include <stdexcept>

namespace trilevel {

namespace {

const double kSqrt3 = std::sqrt(3.0);

GeneratorSet make_standard()
{
    GeneratorSet g;
    g.Ax = Mat3::Zero();
    g.Ax(1, 2) = 1.0;
    g.Ax(2, 1) = 1.0;

    g.Ay = Mat3::Zero();
    g.Ay(0, 2) = -I;
    g.Ay(2, 0) = I;

    g.Az = Mat3::Zero();
    g.Az(0, 1) = 1.0;
    g.Az(1, 0) = 1.0;

    g.Bx = Mat8::Zero();
    g.Bx(0, 7) = 1.0;
    g.Bx(1, 7) = -kSqrt3;
    g.Bx(2, 5) = 1.0;
    g.Bx(3, 4) = 1.0;
    g.Bx(4, 3) = 1.0;
    g.Bx(5, 2) = 1.0;
    g.Bx(7, 0) = 1.0;
    g.Bx(7, 1) = -kSqrt3;

    g.By = Mat8::Zero();
    g.By(0, 4) = -2.0 * I;
    g.By(2, 6) = -I;
    g.By(3, 7) = I;
    g.By(4, 0) = 2.0 * I;
    g.By(6, 2) = I;
    g.By(7, 3) = -I;

    g.Bz = Mat8::Zero();
    g.Bz(0, 3) = 1.0;
    g.Bz(1, 3) = kSqrt3;
    g.Bz(3, 0) = 1.0;
    g.Bz(3, 1) = kSqrt3;
    g.Bz(4, 7) = -1.0;
    g.Bz(5, 6) = -1.0;
    g.Bz(6, 5) = -1.0;
    g.Bz(7, 4) = -1.0;

    g.refresh_ladders();
    return g;
}

template <typename M>
double max_abs(const M& m)
{
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

const GeneratorSet&
GeneratorSet::standard()
{
    static const GeneratorSet g = make_standard();
    return g;
}

void
GeneratorSet::refresh_ladders()
{
    Bplus = Bx + I * By;
    Bminus = Bx - I * By;
}

DensityMatrix
DensityMatrix::checked(const Mat3& m)
{
    DensityMatrix rho(m);
    if (rho.hermiticity_error() > tol::hermitian) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (rho.trace_error() > tol::unit_trace) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    if (rho.min_eigenvalue() < -tol::positivity) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return rho;
}

DensityMatrix
DensityMatrix::level(int k)
{
    if (k < 1 || k > 3) {
        throw std::invalid_argument("level index must be 1, 2 or 3");
    }
    Mat3 m = Mat3::Zero();
    m(k - 1, k - 1) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix
DensityMatrix::pure(const Vec3& psi)
{
    const double n = psi.norm();
    if (n == 0.0) {
        throw std::invalid_argument("pure state vector must be non-zero");
    }
    const Vec3 u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

double
DensityMatrix::hermiticity_error() const
{
    return max_abs(m_ - m_.adjoint());
}

double
DensityMatrix::trace_error() const
{
    return std::abs(m_.trace() - 1.0);
}

double
DensityMatrix::min_eigenvalue() const
{
    const Mat3 h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat3> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool
DensityMatrix::valid() const
{
    return hermiticity_error() <= tol::hermitian &&
        trace_error() <= tol::unit_trace &&
        min_eigenvalue() >= -tol::positivity;
}

double
CoherenceVector::reality_error() const
{
    double err = 0.0;
    for (int i : {0, 1, 2, 4, 6}) {
        err = std::max(err, std::abs(v_(i).imag()));
    }
    for (int i : {3, 5, 7}) {
        err = std::max(err, std::abs(v_(i).real()));
    }
    return err;
}

CoherenceVector
rho_to_eta(const Mat3& r)
{
    Vec8 e;
    e(0) = r(0, 0) - r(2, 2);
    e(1) = (r(0, 0) + r(2, 2) - 2.0 * r(1, 1)) / kSqrt3;
    e(2) = r(0, 1) + r(1, 0);
    e(3) = r(1, 0) - r(0, 1);
    e(4) = r(0, 2) + r(2, 0);
    e(5) = r(2, 0) - r(0, 2);
    e(6) = r(1, 2) + r(2, 1);
    e(7) = r(2, 1) - r(1, 2);
    return CoherenceVector(e);
}

Mat3
eta_to_matrix(const CoherenceVector& eta, cplx trace)
{
    const Vec8& e = eta.vector();
    const cplx s = (2.0 * trace + kSqrt3 * e(1)) / 3.0;
    Mat3 r;
    r(0, 0) = 0.5 * (s + e(0));
    r(2, 2) = 0.5 * (s - e(0));
    r(1, 1) = trace - s;
    r(0, 1) = 0.5 * (e(2) - e(3));
    r(1, 0) = 0.5 * (e(2) + e(3));
    r(0, 2) = 0.5 * (e(4) - e(5));
    r(2, 0) = 0.5 * (e(4) + e(5));
    r(1, 2) = 0.5 * (e(6) - e(7));
    r(2, 1) = 0.5 * (e(6) + e(7));
    return r;
}

DensityMatrix
eta_to_rho(const CoherenceVector& eta, double trace)
{
    return DensityMatrix(eta_to_matrix(eta, trace));
}

Eigen::MatrixXcd
commutator(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y)
{
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
        throw std::invalid_argument(
            "commutator requires square matrices of equal dimension");
    }
    return x * y - y * x;
}

int
nilpotency_degree(const Mat8& m)
{
    Mat8 p = m;
    for (int k = 1; k <= 8; ++k) {
        if (max_abs(p) <= tol::nilpotent) {
            return k;
        }
        p = p * m;
    }
    return -1;
}

bool
AlgebraReport::all_passed() const
{
    for (const auto& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

AlgebraReport
verify_algebra(const GeneratorSet& g)
{
    AlgebraReport report;
    auto add = [&](std::string name, double err, double bound) {
        report.checks.push_back({std::move(name), err <= bound, err, bound});
    };
    auto comm_err = [](const auto& a, const auto& b, const auto& c) {
        return max_abs(commutator(a, b) - I * Eigen::MatrixXcd(c));
    };

    add("[Ax,Ay] = i Az", comm_err(g.Ax, g.Ay, g.Az), tol::commutator);
    add("[Ay,Az] = i Ax", comm_err(g.Ay, g.Az, g.Ax), tol::commutator);
    add("[Az,Ax] = i Ay", comm_err(g.Az, g.Ax, g.Ay), tol::commutator);
    add("[Bx,By] = i Bz", comm_err(g.Bx, g.By, g.Bz), tol::commutator);
    add("[By,Bz] = i Bx", comm_err(g.By, g.Bz, g.Bx), tol::commutator);
    add("[Bz,Bx] = i By", comm_err(g.Bz, g.Bx, g.By), tol::commutator);

    add("Ax Hermitian", max_abs(g.Ax - g.Ax.adjoint()), 0.0);
    add("Ay Hermitian", max_abs(g.Ay - g.Ay.adjoint()), 0.0);
    add("Az Hermitian", max_abs(g.Az - g.Az.adjoint()), 0.0);
    add("Bx Hermitian", max_abs(g.Bx - g.Bx.adjoint()), 0.0);
    add("By Hermitian", max_abs(g.By - g.By.adjoint()), 0.0);
    add("Bz Hermitian", max_abs(g.Bz - g.Bz.adjoint()), 0.0);

    report.nilpotency_plus = nilpotency_degree(g.Bplus);
    report.nilpotency_minus = nilpotency_degree(g.Bminus);
    report.checks.push_back({"B_plus nilpotent", report.nilpotency_plus > 0,
                             double(report.nilpotency_plus), 8.0});
    report.checks.push_back({"B_minus nilpotent", report.nilpotency_minus > 0,
                             double(report.nilpotency_minus), 8.0});
    return report;
}

}  // namespace trilevel
