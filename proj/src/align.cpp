#include "lalign/align.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace lalign {

const char* method_name(Method m) {
    return m == Method::direct ? "direct" : "lie-algebra";
}

namespace {

using Vec6 = std::array<double, 6>;

AlgebraElement to_element(const Vec6& p) {
    AlgebraElement e;
    e.zeta = {p[0], p[1], p[2]};
    e.theta = {p[3], p[4], p[5]};
    return e;
}

Vec6 from_element(const AlgebraElement& e) {
    return {e.zeta[0], e.zeta[1], e.zeta[2], e.theta[0], e.theta[1], e.theta[2]};
}

double sum_squares(const Mat& m) {
    double s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return s;
}

double inf_norm(const Vec6& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

void check_inputs(const Mat& x, const Mat& y, const char* who) {
    if (x.rows() != 4 || y.rows() != 4)
        throw InvalidInput(std::string(who) + ": expected 4 x n inputs (vectors as columns)");
    if (x.cols() != y.cols())
        throw InvalidInput(std::string(who) + ": X and Y must have the same number of columns");
    if (!x.all_finite() || !y.all_finite())
        throw InvalidInput(std::string(who) + ": non-finite input");
}

class Objective {
public:
    Objective(const Mat& x, const Mat& y) : x_(x), y_(y) {}

    double operator()(const Vec6& p) const { return sum_squares(y_ - exp_lorentz_matrix(to_element(p)) * x_); }

    Vec6 gradient(const Vec6& p, double fd_step) const {
        Vec6 g{};
        for (int i = 0; i < 6; ++i) {
            double h = fd_step * std::max(1.0, std::fabs(p[static_cast<size_t>(i)]));
            Vec6 pp = p, pm = p;
            pp[static_cast<size_t>(i)] += h;
            pm[static_cast<size_t>(i)] -= h;
            g[static_cast<size_t>(i)] = ((*this)(pp) - (*this)(pm)) / (2.0 * h);
        }
        return g;
    }

    // residual vector Y - Lambda(p) X, flattened
    std::vector<double> residuals(const Vec6& p) const {
        Mat r = y_ - exp_lorentz_matrix(to_element(p)) * x_;
        std::vector<double> out;
        out.reserve(static_cast<size_t>(r.rows() * r.cols()));
        for (int i = 0; i < r.rows(); ++i)
            for (int j = 0; j < r.cols(); ++j) out.push_back(r(i, j));
        return out;
    }

private:
    const Mat& x_;
    const Mat& y_;
};

// Nelder-Mead on the 6 coordinates, used as a restart when the quasi-Newton
// line search stalls away from a minimum.
Vec6 nelder_mead(const Objective& f, Vec6 start, int max_iters) {
    constexpr int kDim = 6;
    std::array<Vec6, kDim + 1> pts;
    std::array<double, kDim + 1> vals;
    pts[0] = start;
    for (int i = 0; i < kDim; ++i) {
        pts[static_cast<size_t>(i + 1)] = start;
        pts[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] +=
            0.1 * std::max(1.0, std::fabs(start[static_cast<size_t>(i)]));
    }
    for (int i = 0; i <= kDim; ++i) vals[static_cast<size_t>(i)] = f(pts[static_cast<size_t>(i)]);

    auto order = [&]() {
        for (int i = 0; i <= kDim; ++i)
            for (int j = i + 1; j <= kDim; ++j)
                if (vals[static_cast<size_t>(j)] < vals[static_cast<size_t>(i)]) {
                    std::swap(vals[static_cast<size_t>(i)], vals[static_cast<size_t>(j)]);
                    std::swap(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
                }
    };
    order();

    for (int it = 0; it < max_iters; ++it) {
        if (vals[kDim] - vals[0] <= 1e-16 * (std::fabs(vals[0]) + 1e-30)) break;
        Vec6 centroid{};
        for (int i = 0; i < kDim; ++i)
            for (int d = 0; d < kDim; ++d)
                centroid[static_cast<size_t>(d)] += pts[static_cast<size_t>(i)][static_cast<size_t>(d)] / kDim;
        auto blend = [&](double t) {
            Vec6 p;
            for (int d = 0; d < kDim; ++d)
                p[static_cast<size_t>(d)] = centroid[static_cast<size_t>(d)] +
                                            t * (pts[kDim][static_cast<size_t>(d)] - centroid[static_cast<size_t>(d)]);
            return p;
        };
        Vec6 refl = blend(-1.0);
        double f_refl = f(refl);
        if (f_refl < vals[0]) {
            Vec6 exp_pt = blend(-2.0);
            double f_exp = f(exp_pt);
            pts[kDim] = f_exp < f_refl ? exp_pt : refl;
            vals[kDim] = std::min(f_exp, f_refl);
        } else if (f_refl < vals[kDim - 1]) {
            pts[kDim] = refl;
            vals[kDim] = f_refl;
        } else {
            Vec6 contr = blend(0.5);
            double f_contr = f(contr);
            if (f_contr < vals[kDim]) {
                pts[kDim] = contr;
                vals[kDim] = f_contr;
            } else {
                for (int i = 1; i <= kDim; ++i) {
                    for (int d = 0; d < kDim; ++d)
                        pts[static_cast<size_t>(i)][static_cast<size_t>(d)] =
                            0.5 * (pts[static_cast<size_t>(i)][static_cast<size_t>(d)] + pts[0][static_cast<size_t>(d)]);
                    vals[static_cast<size_t>(i)] = f(pts[static_cast<size_t>(i)]);
                }
            }
        }
        order();
    }
    return pts[0];
}

// Gauss-Newton refinement of a converged point: uses the residual vector and
// a central-difference Jacobian, so the attainable accuracy is set by the
// residual evaluation (machine precision) rather than by the scalar
// objective's finite-difference floor.
int gauss_newton_polish(const Objective& f, Vec6& p, double& fval) {
    const int kMaxIters = 12;
    int used = 0;
    for (int it = 0; it < kMaxIters; ++it) {
        std::vector<double> r = f.residuals(p);
        int m = static_cast<int>(r.size());
        Mat jac(m, 6);
        for (int c = 0; c < 6; ++c) {
            double h = 6e-6 * std::max(1.0, std::fabs(p[static_cast<size_t>(c)]));
            Vec6 pp = p, pm = p;
            pp[static_cast<size_t>(c)] += h;
            pm[static_cast<size_t>(c)] -= h;
            std::vector<double> rp = f.residuals(pp);
            std::vector<double> rm = f.residuals(pm);
            for (int i = 0; i < m; ++i)
                jac(i, c) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
        }
        Mat jtj(6, 6);
        Mat jtr(6, 1);
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                double s = 0;
                for (int i = 0; i < m; ++i) s += jac(i, a) * jac(i, b);
                jtj(a, b) = s;
            }
            double s = 0;
            for (int i = 0; i < m; ++i) s += jac(i, a) * r[static_cast<size_t>(i)];
            jtr(a, 0) = s;
        }
        Mat delta;
        try {
            delta = solve(jtj, jtr);
        } catch (const NotInIdentityComponent&) {
            break;  // singular normal equations (underdetermined data)
        }
        // step with halving fallback
        bool improved = false;
        double scale = 1.0;
        for (int half = 0; half < 8; ++half, scale *= 0.5) {
            Vec6 q = p;
            for (int d = 0; d < 6; ++d) q[static_cast<size_t>(d)] -= scale * delta(d, 0);
            double fq = f(q);
            if (fq <= fval) {
                double step = 0;
                for (int d = 0; d < 6; ++d)
                    step = std::max(step, std::fabs(q[static_cast<size_t>(d)] - p[static_cast<size_t>(d)]));
                p = q;
                fval = fq;
                improved = true;
                ++used;
                if (step <= 1e-15 * std::max(1.0, inf_norm(p))) return used;
                break;
            }
        }
        if (!improved) break;
    }
    return used;
}

}  // namespace

double objective(const AlgebraElement& e, const Mat& x, const Mat& y) {
    check_inputs(x, y, "objective");
    return sum_squares(y - exp_lorentz_matrix(e) * x);
}

AlignmentResult align_direct(const Mat& x, const Mat& y, const SolverOptions& opts) {
    check_inputs(x, y, "align_direct");
    if (opts.grad_tol <= 0 || opts.step_tol <= 0 || opts.fd_step <= 0 || opts.max_iters < 1)
        throw InvalidInput("align_direct: solver options must be positive");

    Objective f(x, y);
    std::vector<std::string> diagnostics;
    if (x.cols() < 3)
        diagnostics.push_back("underdetermined: fewer than 3 vector pairs for 6 unknowns");

    Vec6 p = from_element(opts.init);
    double fval = f(p);
    Vec6 grad = f.gradient(p, opts.fd_step);

    Vec6 best_p = p;
    double best_f = fval;

    // inverse Hessian approximation
    std::array<Vec6, 6> h{};
    auto reset_h = [&]() {
        for (int i = 0; i < 6; ++i) {
            h[static_cast<size_t>(i)] = Vec6{};
            h[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
        }
    };
    reset_h();

    const double c1 = 1e-4;
    int ls_failures = 0;
    bool nm_used = false;
    bool converged = false;
    int iters = 0;

    while (iters < opts.max_iters) {
        ++iters;
        if (inf_norm(grad) <= opts.grad_tol * std::max(1.0, fval)) {
            converged = true;
            break;
        }

        Vec6 dir{};
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                dir[static_cast<size_t>(i)] -= h[static_cast<size_t>(i)][static_cast<size_t>(j)] * grad[static_cast<size_t>(j)];
        double gd = 0;
        for (int i = 0; i < 6; ++i) gd += grad[static_cast<size_t>(i)] * dir[static_cast<size_t>(i)];
        if (gd >= 0) {  // not a descent direction: fall back to steepest descent
            reset_h();
            for (int i = 0; i < 6; ++i) dir[static_cast<size_t>(i)] = -grad[static_cast<size_t>(i)];
            gd = 0;
            for (int i = 0; i < 6; ++i) gd += grad[static_cast<size_t>(i)] * dir[static_cast<size_t>(i)];
            if (gd == 0) {
                converged = true;  // zero gradient to machine precision
                break;
            }
        }

        // Armijo backtracking
        double alpha = 1.0;
        bool accepted = false;
        Vec6 p_new{};
        double f_new = fval;
        for (int ls = 0; ls < 60; ++ls) {
            for (int i = 0; i < 6; ++i)
                p_new[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] + alpha * dir[static_cast<size_t>(i)];
            f_new = f(p_new);
            if (f_new <= fval + c1 * alpha * gd) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }

        if (!accepted) {
            if (alpha * inf_norm(dir) <= opts.step_tol) {
                converged = true;  // step collapsed below the step tolerance
                break;
            }
            ++ls_failures;
            reset_h();
            if (ls_failures >= 3) {
                if (!nm_used) {
                    p = nelder_mead(f, p, 400);
                    fval = f(p);
                    grad = f.gradient(p, opts.fd_step);
                    if (fval < best_f) {
                        best_f = fval;
                        best_p = p;
                    }
                    nm_used = true;
                    ls_failures = 0;
                    diagnostics.push_back("line search stalled; restarted from Nelder-Mead");
                    continue;
                }
                converged = true;  // stalled both ways: accept the point
                diagnostics.push_back("line search stalled after Nelder-Mead restart");
                break;
            }
            continue;
        }

        Vec6 grad_new = f.gradient(p_new, opts.fd_step);
        Vec6 s{}, yv{};
        double step = 0;
        for (int i = 0; i < 6; ++i) {
            s[static_cast<size_t>(i)] = p_new[static_cast<size_t>(i)] - p[static_cast<size_t>(i)];
            yv[static_cast<size_t>(i)] = grad_new[static_cast<size_t>(i)] - grad[static_cast<size_t>(i)];
            step = std::max(step, std::fabs(s[static_cast<size_t>(i)]));
        }
        double ys = 0;
        for (int i = 0; i < 6; ++i) ys += yv[static_cast<size_t>(i)] * s[static_cast<size_t>(i)];
        if (ys > 1e-18) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            double rho = 1.0 / ys;
            Vec6 hy{};
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    hy[static_cast<size_t>(i)] += h[static_cast<size_t>(i)][static_cast<size_t>(j)] * yv[static_cast<size_t>(j)];
            double yhy = 0;
            for (int i = 0; i < 6; ++i) yhy += yv[static_cast<size_t>(i)] * hy[static_cast<size_t>(i)];
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) {
                    double si = s[static_cast<size_t>(i)], sj = s[static_cast<size_t>(j)];
                    h[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        -rho * (hy[static_cast<size_t>(i)] * sj + si * hy[static_cast<size_t>(j)]) +
                        rho * (1.0 + rho * yhy) * si * sj;
                }
        } else {
            reset_h();
        }

        p = p_new;
        fval = f_new;
        grad = grad_new;
        if (fval < best_f) {
            best_f = fval;
            best_p = p;
        }
        if (step <= opts.step_tol) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        AlignmentResult best;
        best.algebra = to_element(best_p);
        best.lambda = exp_lorentz(best.algebra);
        best.residual = best_f;
        best.method = Method::direct;
        best.iterations = iters;
        best.diagnostics = diagnostics;
        best.diagnostics.push_back("did not converge within max_iters");
        throw AlignNonConvergence("align_direct: exceeded max_iters", std::move(best));
    }

    if (fval > best_f) {
        p = best_p;
        fval = best_f;
    }
    iters += gauss_newton_polish(f, p, fval);

    AlignmentResult result;
    result.algebra = to_element(p);
    result.lambda = exp_lorentz(result.algebra);
    result.residual = f(p);
    result.method = Method::direct;
    result.iterations = iters;
    result.diagnostics = std::move(diagnostics);
    return result;
}

AlignmentResult align_lie(const Mat& x, const Mat& y) {
    check_inputs(x, y, "align_lie");
    PinvResult pinv = pseudoinverse(x);
    if (pinv.rank < 4)
        throw RankDeficientError("align_lie: effective rank " + std::to_string(pinv.rank) +
                                     " < 4, alignment underdetermined",
                                 pinv.rank);
    Mat lambda0 = y * pinv.pinv;
    Mat l0 = mat_log_real(lambda0);  // throws NotInIdentityComponent when the fit left the group

    AlignmentResult result;
    result.algebra = project_to_algebra(l0);
    result.lambda = exp_lorentz(result.algebra);
    result.residual = objective(result.algebra, x, y);
    result.method = Method::lie_algebra;
    result.iterations = 0;
    return result;
}

ErrorNorms error_norms(const Mat& estimated, const Mat& truth) {
    if (estimated.rows() != truth.rows() || estimated.cols() != truth.cols())
        throw InvalidInput("error_norms: shape mismatch");
    Mat d = estimated - truth;
    return ErrorNorms{d.frobenius_norm(), d.max_abs()};
}

}  // namespace lalign
