#include <cmath>

#include "lalign/matrix.hpp"

namespace lalign {

namespace {

double vec_norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

EigPair principal_eigenpair(const Mat& s, double tol, int max_iter) {
    if (s.rows() != s.cols()) throw InvalidInput("principal_eigenpair: matrix must be square");
    if (!s.all_finite()) throw InvalidInput("principal_eigenpair: non-finite input");
    int n = s.rows();
    double fro = s.frobenius_norm();
    if (fro == 0.0) {
        EigPair e;
        e.value = 0.0;
        e.vector.assign(static_cast<size_t>(n), 0.0);
        e.vector[0] = 1.0;
        return e;
    }
    if ((s - s.transposed()).frobenius_norm() > 1e-10 * fro)
        throw InvalidInput("principal_eigenpair: matrix is not symmetric");

    // Shift so the algebraically largest eigenvalue dominates in magnitude.
    double mu = fro + 1.0;
    Mat p = s;
    for (int i = 0; i < n; ++i) p(i, i) += mu;

    // Deterministic start, one restart from a fixed alternative in case the
    // first start is (numerically) orthogonal to the dominant eigenvector.
    std::vector<std::vector<double>> starts = {
        std::vector<double>(static_cast<size_t>(n), 0.5),
        std::vector<double>(static_cast<size_t>(n), 0.5)};
    for (size_t i = 1; i < starts[1].size(); i += 2) starts[1][i] = -0.5;

    int total_iters = 0;
    for (const auto& start : starts) {
        std::vector<double> v = start;
        double nv = vec_norm(v);
        for (double& x : v) x /= nv;
        for (int it = 0; it < max_iter; ++it, ++total_iters) {
            std::vector<double> w(static_cast<size_t>(n), 0.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) w[static_cast<size_t>(r)] += p(r, c) * v[static_cast<size_t>(c)];
            double rq = 0;
            for (int r = 0; r < n; ++r) rq += v[static_cast<size_t>(r)] * w[static_cast<size_t>(r)];
            double resid = 0;
            for (int r = 0; r < n; ++r) {
                double d = w[static_cast<size_t>(r)] - rq * v[static_cast<size_t>(r)];
                resid += d * d;
            }
            resid = std::sqrt(resid);
            if (resid <= tol * fro) {
                EigPair e;
                e.value = rq - mu;
                e.vector = v;
                return e;
            }
            double nw = vec_norm(w);
            if (nw == 0.0) break;
            for (int r = 0; r < n; ++r) v[static_cast<size_t>(r)] = w[static_cast<size_t>(r)] / nw;
        }
    }
    throw ConvergenceFailure("principal_eigenpair: power iteration did not converge", total_iters);
}

}  // namespace lalign
