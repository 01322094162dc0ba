#include <cmath>

#include "lalign/matrix.hpp"

namespace lalign {

Mat mat_exp_series(const Mat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("mat_exp_series: matrix must be square");
    if (!m.all_finite()) throw InvalidInput("mat_exp_series: non-finite input");
    int n = m.rows();

    // scale so ||M/2^s|| <= 0.5, Taylor to order 18, square back
    double norm = m.frobenius_norm();
    int s = 0;
    while (norm > 0.5 && s < 60) {
        norm *= 0.5;
        ++s;
    }
    Mat x = m * std::ldexp(1.0, -s);

    Mat sum = Mat::identity(n);
    Mat term = Mat::identity(n);
    for (int k = 1; k <= 18; ++k) {
        term = term * x;
        term *= 1.0 / k;
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

namespace {

// Principal square root by the Denman-Beavers iteration.
Mat sqrt_denman_beavers(const Mat& m) {
    Mat y = m;
    Mat z = Mat::identity(m.rows());
    for (int it = 0; it < 100; ++it) {
        Mat yn = (y + inverse(z)) * 0.5;
        Mat zn = (z + inverse(y)) * 0.5;
        double change = (yn - y).frobenius_norm();
        y = yn;
        z = zn;
        if (change <= 5e-15 * std::max(1.0, y.frobenius_norm())) return y;
    }
    throw NotInIdentityComponent("mat_log_real: square-root iteration did not converge");
}

// 7-point Gauss-Legendre nodes/weights on [0,1]; the resulting quadrature of
// the integral form of log(I + X) is its degree-7 diagonal Pade approximant.
constexpr double kLogNodes[7][2] = {
    {0.025446043828620757, 0.064742483084435323},
    {0.12923440720030277, 0.13985269574463829},
    {0.29707742431130141, 0.19091502525255916},
    {0.5, 0.20897959183673448},
    {0.70292257568869854, 0.19091502525255916},
    {0.87076559279969723, 0.13985269574463829},
    {0.97455395617137919, 0.064742483084435323},
};

}  // namespace

Mat mat_log_real(const Mat& m) {
    if (m.rows() != m.cols()) throw InvalidInput("mat_log_real: matrix must be square");
    if (!m.all_finite()) throw InvalidInput("mat_log_real: non-finite input");
    int n = m.rows();
    if (det(m) == 0.0) throw NotInIdentityComponent("mat_log_real: singular matrix");

    Mat r = m;
    int k = 0;
    while ((r - Mat::identity(n)).frobenius_norm() > 0.25) {
        if (k >= 40) throw NotInIdentityComponent("mat_log_real: inverse scaling did not reach the identity");
        r = sqrt_denman_beavers(r);
        ++k;
    }

    Mat x = r - Mat::identity(n);
    Mat log_r(n, n);
    for (const auto& node : kLogNodes) {
        Mat denom = Mat::identity(n) + x * node[0];
        log_r += solve(denom, x) * node[1];
    }
    Mat result = log_r * std::ldexp(1.0, k);

    double scale = std::max(1.0, m.frobenius_norm());
    if ((mat_exp_series(result) - m).frobenius_norm() > 1e-9 * scale)
        throw NotInIdentityComponent("mat_log_real: exp(log M) does not reconstruct M");
    return result;
}

}  // namespace lalign
