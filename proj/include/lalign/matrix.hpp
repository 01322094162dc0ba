#ifndef LALIGN_MATRIX_HPP
#define LALIGN_MATRIX_HPP

#include <array>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lalign {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Eigensolver failed to reach the requested residual.
struct ConvergenceFailure : std::runtime_error {
    ConvergenceFailure(const std::string& what, int iters)
        : std::runtime_error(what), iterations(iters) {}
    int iterations;
};

/// The principal real logarithm does not exist (or could not be computed):
/// the matrix is singular or has an eigenvalue on the closed negative real
/// axis, i.e. it is not in the identity component of the group.
struct NotInIdentityComponent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Small dense real matrix, row-major. Sized for this library's needs
/// (dimensions up to 16), not a general-purpose linear algebra type.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), 0.0) {
        if (rows < 1 || cols < 1) throw InvalidInput("Mat: dimensions must be positive");
    }
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(double s) const;
    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

    Mat transposed() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    /// Column j as a vector.
    std::vector<double> col(int j) const;
    void set_col(int j, const std::vector<double>& v);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Mat operator*(double s, const Mat& m);

/// Determinant by LU with partial pivoting.
double det(const Mat& m);

/// Inverse by LU with partial pivoting. Throws NotInIdentityComponent on a
/// (numerically) singular matrix, since every caller in this library is a
/// matrix-function iteration where singularity means exactly that.
Mat inverse(const Mat& m);

/// Solve A X = B for square A.
Mat solve(const Mat& a, const Mat& b);

struct SvdResult {
    Mat u;                                // m x m orthogonal
    std::vector<double> singular_values;  // min(m,n), nonincreasing
    Mat v;                                // n x n orthogonal
};

/// Full SVD by one-sided Jacobi on the smaller dimension. Intended for the
/// tiny matrices this library deals in (m <= 4, n <= 16 or transposed).
SvdResult svd(const Mat& m);

struct EigPair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Algebraically largest eigenvalue and its eigenvector of a symmetric
/// matrix, by power iteration on S + mu*I with mu = ||S||_F + 1 (the shift
/// makes the algebraically largest eigenvalue dominant in magnitude).
/// Converged when ||S e - lambda e|| <= tol * ||S||_F.
EigPair principal_eigenpair(const Mat& s, double tol, int max_iter);

/// exp(M) by scaling and squaring with an order-18 Taylor evaluation of the
/// scaled matrix. Serves as the brute-force oracle for the closed-form
/// Lorentz exponential.
Mat mat_exp_series(const Mat& m);

/// Principal real logarithm by inverse scaling and squaring: Denman-Beavers
/// square roots until the iterate is within 0.25 of the identity, then a
/// degree-7 diagonal Pade approximant. Verifies exp(log M) ~ M on exit.
Mat mat_log_real(const Mat& m);

struct PinvResult {
    Mat pinv;
    int rank = 0;
    bool rank_deficient = false;  // effective rank < 4
};

/// Moore-Penrose pseudoinverse of a 4 x n matrix via SVD; singular values
/// below rank_tol * sigma_1 are treated as zero.
PinvResult pseudoinverse(const Mat& x, double rank_tol = 1e-10);

}  // namespace lalign

#endif
