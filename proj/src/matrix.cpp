#include "lalign/matrix.hpp"

#include <cmath>

namespace lalign {

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    if (rows_ < 1 || cols_ < 1) throw InvalidInput("Mat: empty initializer");
    a_.reserve(static_cast<size_t>(rows_ * cols_));
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw InvalidInput("Mat: ragged initializer");
        for (double v : r) a_.push_back(v);
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void check_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput(std::string("Mat: shape mismatch in ") + op);
}

Mat Mat::operator+(const Mat& o) const {
    check_same_shape(*this, o, "+");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    check_same_shape(*this, o, "-");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

Mat& Mat::operator+=(const Mat& o) {
    check_same_shape(*this, o, "+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    check_same_shape(*this, o, "-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw InvalidInput("Mat: shape mismatch in *");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Mat Mat::operator*(double s) const {
    Mat r = *this;
    for (double& v : r.a_) v *= s;
    return r;
}

Mat& Mat::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

Mat operator*(double s, const Mat& m) { return m * s; }

Mat Mat::transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

double Mat::frobenius_norm() const {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

bool Mat::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> Mat::col(int j) const {
    std::vector<double> v(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, const std::vector<double>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<size_t>(i)];
}

namespace {

// LU with partial pivoting, in place. Returns the permutation sign, or 0 if
// a pivot collapsed to zero.
int lu_decompose(Mat& a, std::vector<int>& piv) {
    int n = a.rows();
    piv.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) piv[static_cast<size_t>(i)] = i;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::fabs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) return 0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(piv[static_cast<size_t>(k)], piv[static_cast<size_t>(p)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            double lik = a(i, k);
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return sign;
}

}  // namespace

double det(const Mat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("det: matrix must be square");
    Mat a = m;
    std::vector<int> piv;
    int sign = lu_decompose(a, piv);
    if (sign == 0) return 0.0;
    double d = sign;
    for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
    return d;
}

Mat solve(const Mat& a0, const Mat& b) {
    if (a0.rows() != a0.cols()) throw InvalidInput("solve: matrix must be square");
    if (a0.rows() != b.rows()) throw InvalidInput("solve: shape mismatch");
    int n = a0.rows();
    Mat a = a0;
    std::vector<int> piv;
    if (lu_decompose(a, piv) == 0)
        throw NotInIdentityComponent("solve: singular matrix");
    Mat x(n, b.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols(); ++j) x(i, j) = b(piv[static_cast<size_t>(i)], j);
    // forward, then back substitution
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            double lik = a(i, k);
            if (lik == 0.0) continue;
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= lik * x(k, j);
        }
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < x.cols(); ++j) x(k, j) /= a(k, k);
        for (int i = 0; i < k; ++i) {
            double uik = a(i, k);
            if (uik == 0.0) continue;
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= uik * x(k, j);
        }
    }
    return x;
}

Mat inverse(const Mat& m) { return solve(m, Mat::identity(m.rows())); }

}  // namespace lalign
