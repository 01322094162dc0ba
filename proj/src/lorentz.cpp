#include "lalign/lorentz.hpp"

#include <cmath>

namespace lalign {

Mat minkowski_eta() {
    Mat eta = Mat::identity(4);
    eta(0, 0) = -1.0;
    return eta;
}

LorentzDefect lorentz_defect(const Mat& m) {
    if (m.rows() != 4 || m.cols() != 4) throw InvalidInput("lorentz_defect: expected 4x4");
    Mat eta = minkowski_eta();
    LorentzDefect d;
    d.eta_defect = (m.transposed() * eta * m - eta).frobenius_norm();
    d.det_defect = std::fabs(det(m) - 1.0);
    d.orthochronous = m(0, 0) >= 0.0;
    return d;
}

LorentzMatrix LorentzMatrix::checked(Mat m) {
    if (m.rows() != 4 || m.cols() != 4 || !m.all_finite())
        throw InvalidInput("LorentzMatrix: expected finite 4x4");
    LorentzDefect d = lorentz_defect(m);
    if (d.eta_defect > 1e-9)
        throw InvalidInput("LorentzMatrix: eta-orthogonality defect " + std::to_string(d.eta_defect));
    if (d.det_defect > 1e-9)
        throw InvalidInput("LorentzMatrix: determinant defect " + std::to_string(d.det_defect));
    if (m(0, 0) < 1.0 - 1e-12)
        throw InvalidInput("LorentzMatrix: not orthochronous");
    return LorentzMatrix(std::move(m));
}

Mat algebra_to_matrix(const AlgebraElement& e) {
    for (double v : e.zeta)
        if (!std::isfinite(v)) throw InvalidInput("algebra_to_matrix: non-finite zeta");
    for (double v : e.theta)
        if (!std::isfinite(v)) throw InvalidInput("algebra_to_matrix: non-finite theta");
    const auto& z = e.zeta;
    const auto& t = e.theta;
    return Mat{{0, z[0], z[1], z[2]},
               {z[0], 0, -t[2], t[1]},
               {z[1], t[2], 0, -t[0]},
               {z[2], -t[1], t[0], 0}};
}

AlgebraElement matrix_to_algebra(const Mat& m, double tol) {
    if (m.rows() != 4 || m.cols() != 4) throw InvalidInput("matrix_to_algebra: expected 4x4");
    AlgebraElement e;
    for (int j = 1; j < 4; ++j) e.zeta[static_cast<size_t>(j - 1)] = 0.5 * (m(0, j) + m(j, 0));
    e.theta = {0.5 * (m(3, 2) - m(2, 3)), 0.5 * (m(1, 3) - m(3, 1)), 0.5 * (m(2, 1) - m(1, 2))};
    double dev = (algebra_to_matrix(e) - m).max_abs();
    if (dev > tol)
        throw NotAnAlgebraElement("matrix_to_algebra: structural deviation " + std::to_string(dev));
    return e;
}

namespace {

// sin(x)/x and sinh(x)/x with small-argument Taylor guards; both are even,
// so only x >= 0 reaches them.
double sinc(double x) {
    if (x < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sinhc(double x) {
    if (x < 1e-4) {
        double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

}  // namespace

Mat exp_lorentz_matrix(const AlgebraElement& e) {
    Mat a = algebra_to_matrix(e);

    double z2 = e.zeta[0] * e.zeta[0] + e.zeta[1] * e.zeta[1] + e.zeta[2] * e.zeta[2];
    double t2 = e.theta[0] * e.theta[0] + e.theta[1] * e.theta[1] + e.theta[2] * e.theta[2];
    double dot = e.zeta[0] * e.theta[0] + e.zeta[1] * e.theta[1] + e.zeta[2] * e.theta[2];
    double diff = t2 - z2;
    double s = std::hypot(diff, 2.0 * dot);  // = alpha^2 + beta^2

    // Lightlike direction: the closed form is 0/0, the series is exact.
    if (s < 1e-8) return mat_exp_series(a);

    double alpha = std::sqrt(std::max(0.0, 0.5 * (diff + s)));  // angle invariant
    double beta = std::sqrt(std::max(0.0, 0.5 * (s - diff)));   // rapidity invariant

    double f0 = beta * beta * std::cos(alpha) + alpha * alpha * std::cosh(beta);
    double f1 = beta * beta * sinc(alpha) + alpha * alpha * sinhc(beta);
    // cosh b - cos a, written cancellation-free
    double sh = std::sinh(0.5 * beta), sn = std::sin(0.5 * alpha);
    double f2 = 2.0 * sh * sh + 2.0 * sn * sn;
    double f3 = (sinhc(beta) - 1.0) + (1.0 - sinc(alpha));

    Mat a2 = a * a;
    Mat a3 = a2 * a;
    Mat out = Mat::identity(4) * f0 + a * f1 + a2 * f2 + a3 * f3;
    out *= 1.0 / s;
    return out;
}

LorentzMatrix exp_lorentz(const AlgebraElement& e) {
    return LorentzMatrix::checked(exp_lorentz_matrix(e));
}

AlgebraElement project_to_algebra(const Mat& l0) {
    if (l0.rows() != 4 || l0.cols() != 4) throw InvalidInput("project_to_algebra: expected 4x4");
    if (!l0.all_finite()) throw InvalidInput("project_to_algebra: non-finite input");
    AlgebraElement e;
    for (int j = 1; j < 4; ++j) e.zeta[static_cast<size_t>(j - 1)] = 0.5 * (l0(0, j) + l0(j, 0));
    e.theta = {0.5 * (l0(3, 2) - l0(2, 3)), 0.5 * (l0(1, 3) - l0(3, 1)), 0.5 * (l0(2, 1) - l0(1, 2))};
    return e;
}

FourVector apply(const LorentzMatrix& lambda, const FourVector& v) {
    const Mat& m = lambda.matrix();
    return FourVector{
        m(0, 0) * v.t + m(0, 1) * v.x + m(0, 2) * v.y + m(0, 3) * v.z,
        m(1, 0) * v.t + m(1, 1) * v.x + m(1, 2) * v.y + m(1, 3) * v.z,
        m(2, 0) * v.t + m(2, 1) * v.x + m(2, 2) * v.y + m(2, 3) * v.z,
        m(3, 0) * v.t + m(3, 1) * v.x + m(3, 2) * v.y + m(3, 3) * v.z};
}

double minkowski_inner(const FourVector& u, const FourVector& v) {
    return -u.t * v.t + u.x * v.x + u.y * v.y + u.z * v.z;
}

}  // namespace lalign
