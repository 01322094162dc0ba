#include "lalign/euclid.hpp"

#include <cmath>

namespace lalign {

Quat quat_mul(const Quat& p, const Quat& q) {
    return Quat{p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
                p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
                p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
                p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}

Quat quat_conj(const Quat& q) { return Quat{q.q0, -q.q1, -q.q2, -q.q3}; }

double quat_norm2(const Quat& q) {
    return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

std::array<double, 3> quat_rotate(const Quat& q, const std::array<double, 3>& r) {
    if (std::fabs(std::sqrt(quat_norm2(q)) - 1.0) > 1e-10)
        throw InvalidInput("quat_rotate: quaternion is not unit");
    Quat rv{0.0, r[0], r[1], r[2]};
    Quat out = quat_mul(quat_mul(q, rv), quat_conj(q));
    return {out.q1, out.q2, out.q3};
}

Mat quat_to_matrix(const Quat& q) {
    if (std::fabs(std::sqrt(quat_norm2(q)) - 1.0) > 1e-10)
        throw InvalidInput("quat_to_matrix: quaternion is not unit");
    double q00 = q.q0 * q.q0, q11 = q.q1 * q.q1, q22 = q.q2 * q.q2, q33 = q.q3 * q.q3;
    double q01 = q.q0 * q.q1, q02 = q.q0 * q.q2, q03 = q.q0 * q.q3;
    double q12 = q.q1 * q.q2, q13 = q.q1 * q.q3, q23 = q.q2 * q.q3;
    return Mat{{q00 + q11 - q22 - q33, 2 * (q12 - q03), 2 * (q13 + q02)},
               {2 * (q12 + q03), q00 - q11 + q22 - q33, 2 * (q23 - q01)},
               {2 * (q13 - q02), 2 * (q23 + q01), q00 - q11 - q22 + q33}};
}

Quat quat_canonical(const Quat& q) {
    double lead = q.q0;
    if (lead == 0.0) lead = q.q1;
    if (lead == 0.0) lead = q.q2;
    if (lead == 0.0) lead = q.q3;
    if (lead < 0.0) return Quat{-q.q0, -q.q1, -q.q2, -q.q3};
    return q;
}

KabschResult kabsch(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("kabsch: A and B must have the same shape");
    if (a.cols() < 1) throw InvalidInput("kabsch: need at least one vector pair");
    int n = a.rows();

    Mat h = b * a.transposed();
    SvdResult d = svd(h);

    KabschResult out{d.u * d.v.transposed(), false};
    if (det(out.rotation) < 0.0) {
        // negate the last column of U to stay in SO(N)
        Mat u = d.u;
        for (int i = 0; i < n; ++i) u(i, n - 1) = -u(i, n - 1);
        out.rotation = u * d.v.transposed();
    }
    double s1 = d.singular_values[0];
    double tail = d.singular_values[static_cast<size_t>(n - 1)] +
                  d.singular_values[static_cast<size_t>(n - 2)];
    out.ambiguous = tail <= 1e-10 * std::max(1.0, s1);
    return out;
}

HornResult horn(const Mat& a, const Mat& b) {
    if (a.rows() != 3 || b.rows() != 3) throw InvalidInput("horn: expected 3 x n inputs");
    if (a.cols() != b.cols()) throw InvalidInput("horn: A and B must have the same shape");

    // S_ab = sum_i (v_A,i)_a (v_B,i)_b
    Mat s = a * b.transposed();
    double sxx = s(0, 0), sxy = s(0, 1), sxz = s(0, 2);
    double syx = s(1, 0), syy = s(1, 1), syz = s(1, 2);
    double szx = s(2, 0), szy = s(2, 1), szz = s(2, 2);
    Mat n{{sxx + syy + szz, syz - szy, szx - sxz, sxy - syx},
          {syz - szy, sxx - syy - szz, sxy + syx, szx + sxz},
          {szx - sxz, sxy + syx, -sxx + syy - szz, syz + szy},
          {sxy - syx, szx + sxz, syz + szy, -sxx - syy + szz}};

    HornResult out;
    EigPair top;
    try {
        top = principal_eigenpair(n, 1e-13, 50000);
    } catch (const ConvergenceFailure&) {
        // tight tolerance is unreachable when the top eigenvalues nearly
        // coincide; any vector of the near-degenerate subspace is a valid
        // maximizer, so solve loosely and flag the ambiguity
        top = principal_eigenpair(n, 1e-8, 50000);
        out.ambiguous = true;
    }
    out.q = quat_canonical(Quat{top.vector[0], top.vector[1], top.vector[2], top.vector[3]});
    out.eigenvalue = top.value;

    // second eigenvalue by deflated power iteration, for the gap check
    double nf = n.frobenius_norm();
    if (nf > 0) {
        double mu = nf + 1.0;
        Mat p = n;
        for (int i = 0; i < 4; ++i) p(i, i) += mu;
        std::array<double, 4> v{0.21, -0.53, 0.81, 0.37};  // fixed start
        auto deflate = [&](std::array<double, 4>& w) {
            double d = 0;
            for (int i = 0; i < 4; ++i) d += w[static_cast<size_t>(i)] * top.vector[static_cast<size_t>(i)];
            for (int i = 0; i < 4; ++i) w[static_cast<size_t>(i)] -= d * top.vector[static_cast<size_t>(i)];
        };
        deflate(v);
        for (int it = 0; it < 500; ++it) {
            std::array<double, 4> w{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) w[static_cast<size_t>(r)] += p(r, c) * v[static_cast<size_t>(c)];
            deflate(w);
            double nw = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
            if (nw == 0.0) break;
            for (int i = 0; i < 4; ++i) v[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] / nw;
        }
        double lambda2 = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) lambda2 += v[static_cast<size_t>(r)] * n(r, c) * v[static_cast<size_t>(c)];
        out.ambiguous = out.ambiguous || (top.value - lambda2) < 1e-10 * nf;
    }
    return out;
}

}  // namespace lalign
