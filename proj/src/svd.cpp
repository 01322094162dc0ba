#include <algorithm>
#include <cmath>
#include <numeric>

#include "lalign/matrix.hpp"

namespace lalign {

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSweeps = 60;

// Orthonormal completion of the first `have` columns of u (p x p) by
// modified Gram-Schmidt over the standard basis, re-orthogonalized once.
void complete_basis(Mat& u, int have) {
    int p = u.rows();
    int next = have;
    for (int cand = 0; cand < p && next < p; ++cand) {
        std::vector<double> w(static_cast<size_t>(p), 0.0);
        w[static_cast<size_t>(cand)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < next; ++j) {
                double d = 0;
                for (int i = 0; i < p; ++i) d += u(i, j) * w[static_cast<size_t>(i)];
                for (int i = 0; i < p; ++i) w[static_cast<size_t>(i)] -= d * u(i, j);
            }
        }
        double nw = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (nw < 0.5) continue;  // candidate nearly in span, try the next one
        for (int i = 0; i < p; ++i) u(i, next) = w[static_cast<size_t>(i)] / nw;
        ++next;
    }
}

// One-sided Jacobi on a p x q matrix with p >= q: rotates column pairs until
// they are mutually orthogonal. Returns full U (p x p), sigma (q), V (q x q).
SvdResult jacobi_svd_tall(const Mat& m) {
    int p = m.rows(), q = m.cols();
    Mat t = m;
    Mat v = Mat::identity(q);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < q - 1; ++i) {
            for (int j = i + 1; j < q; ++j) {
                double alpha = 0, beta = 0, gamma = 0;
                for (int k = 0; k < p; ++k) {
                    alpha += t(k, i) * t(k, i);
                    beta += t(k, j) * t(k, j);
                    gamma += t(k, i) * t(k, j);
                }
                double scale = std::sqrt(alpha * beta);
                if (scale == 0.0 || std::fabs(gamma) <= kJacobiTol * scale) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double tan_phi = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + tan_phi * tan_phi);
                double s = c * tan_phi;
                for (int k = 0; k < p; ++k) {
                    double ti = t(k, i), tj = t(k, j);
                    t(k, i) = c * ti - s * tj;
                    t(k, j) = s * ti + c * tj;
                }
                for (int k = 0; k < q; ++k) {
                    double vi = v(k, i), vj = v(k, j);
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
        double s = 0;
        for (int k = 0; k < p; ++k) s += t(k, j) * t(k, j);
        sigma[static_cast<size_t>(j)] = std::sqrt(s);
    }

    // sort nonincreasing, permuting T and V columns alongside
    std::vector<int> order(static_cast<size_t>(q));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sigma[static_cast<size_t>(a)] > sigma[static_cast<size_t>(b)];
    });
    Mat ts(p, q), vs(q, q);
    std::vector<double> ss(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
        int src = order[static_cast<size_t>(j)];
        ss[static_cast<size_t>(j)] = sigma[static_cast<size_t>(src)];
        for (int k = 0; k < p; ++k) ts(k, j) = t(k, src);
        for (int k = 0; k < q; ++k) vs(k, j) = v(k, src);
    }

    Mat u(p, p);
    double smax = ss.empty() ? 0.0 : ss[0];
    int have = 0;
    for (int j = 0; j < q; ++j) {
        double sj = ss[static_cast<size_t>(j)];
        if (sj > smax * 1e-300 && sj > 0.0) {
            for (int k = 0; k < p; ++k) u(k, have) = ts(k, j) / sj;
            ++have;
        } else {
            break;  // remaining columns are numerically zero; complete below
        }
    }
    complete_basis(u, have);

    return SvdResult{std::move(u), std::move(ss), std::move(vs)};
}

}  // namespace

SvdResult svd(const Mat& m) {
    if (!m.all_finite()) throw InvalidInput("svd: non-finite input");
    if (m.rows() >= m.cols()) return jacobi_svd_tall(m);
    SvdResult r = jacobi_svd_tall(m.transposed());
    // M = (U' S V'^T)^T = V' S^T U'^T
    return SvdResult{std::move(r.v), std::move(r.singular_values), std::move(r.u)};
}

PinvResult pseudoinverse(const Mat& x, double rank_tol) {
    SvdResult d = svd(x);
    int m = x.rows(), n = x.cols();
    int k = static_cast<int>(d.singular_values.size());
    double smax = k > 0 ? d.singular_values[0] : 0.0;
    PinvResult out;
    out.pinv = Mat(n, m);
    for (int i = 0; i < k; ++i) {
        double s = d.singular_values[static_cast<size_t>(i)];
        if (smax > 0.0 && s > rank_tol * smax) {
            ++out.rank;
            double inv = 1.0 / s;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < m; ++c) out.pinv(r, c) += d.v(r, i) * inv * d.u(c, i);
        }
    }
    out.rank_deficient = out.rank < 4;
    return out;
}

}  // namespace lalign
