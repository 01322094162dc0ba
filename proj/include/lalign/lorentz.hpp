#ifndef LALIGN_LORENTZ_HPP
#define LALIGN_LORENTZ_HPP

#include <array>

#include "lalign/matrix.hpp"

namespace lalign {

/// Spacetime vector in the (-,+,+,+) metric convention, natural units.
struct FourVector {
    double t = 0, x = 0, y = 0, z = 0;
};

/// Element of so(3,1): boost vector zeta (rapidity) and rotation vector
/// theta (radians).
struct AlgebraElement {
    std::array<double, 3> zeta{{0, 0, 0}};
    std::array<double, 3> theta{{0, 0, 0}};
};

struct NotAnAlgebraElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LorentzDefect {
    double eta_defect = 0;   // || m^T eta m - eta ||_F
    double det_defect = 0;   // | det m - 1 |
    bool orthochronous = false;  // m(0,0) >= 0
};

/// eta = diag(-1, +1, +1, +1).
Mat minkowski_eta();

LorentzDefect lorentz_defect(const Mat& m);

/// Validated element of SO(3,1)+: eta-orthogonal, det 1, orthochronous.
class LorentzMatrix {
public:
    LorentzMatrix() : m_(Mat::identity(4)) {}

    /// Checked construction; throws InvalidInput when the defects exceed
    /// (eta 1e-9, det 1e-9) or m(0,0) < 1 - 1e-12.
    static LorentzMatrix checked(Mat m);

    const Mat& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    explicit LorentzMatrix(Mat m) : m_(std::move(m)) {}
    Mat m_;
};

/// The generator matrix: zero diagonal, first row/column = zeta (symmetric),
/// spatial block antisymmetric in theta.
Mat algebra_to_matrix(const AlgebraElement& e);

/// Inverse of algebra_to_matrix for matrices structurally within tol of the
/// generator form; otherwise throws NotAnAlgebraElement.
AlgebraElement matrix_to_algebra(const Mat& m, double tol = 1e-9);

/// Closed-form exponential of the generator in terms of the invariants
/// a, b (nonnegative roots) and four coefficient functions, with series
/// fallback for the degenerate a = b = 0 direction. Raw-matrix path used
/// inside the solvers; exp_lorentz wraps it in the checked type.
Mat exp_lorentz_matrix(const AlgebraElement& e);

LorentzMatrix exp_lorentz(const AlgebraElement& e);

/// Frobenius-nearest algebra element to an arbitrary 4x4 matrix: drop the
/// diagonal, symmetrize first row/column, antisymmetrize the spatial block.
AlgebraElement project_to_algebra(const Mat& l0);

FourVector apply(const LorentzMatrix& lambda, const FourVector& v);

double minkowski_inner(const FourVector& u, const FourVector& v);

}  // namespace lalign

#endif
