#ifndef LALIGN_ALIGN_HPP
#define LALIGN_ALIGN_HPP

#include <string>
#include <vector>

#include "lalign/lorentz.hpp"
#include "lalign/matrix.hpp"

namespace lalign {

enum class Method { direct, lie_algebra };

const char* method_name(Method m);

struct SolverOptions {
    double grad_tol = 1e-12;   // stop when ||grad||_inf <= grad_tol * max(1, residual)
    double step_tol = 1e-14;
    int max_iters = 10000;
    double fd_step = 1e-6;     // central-difference step, scaled by max(1, |param|)
    AlgebraElement init{};
};

struct AlignmentResult {
    LorentzMatrix lambda;
    AlgebraElement algebra;   // log of lambda
    double residual = 0;      // sum_i ||Y_i - lambda X_i||^2 at the solution
    Method method = Method::direct;
    int iterations = 0;
    std::vector<std::string> diagnostics;
};

/// align_direct ran out of iterations; carries the best point found.
struct AlignNonConvergence : std::runtime_error {
    AlignNonConvergence(const std::string& what, AlignmentResult best_so_far)
        : std::runtime_error(what), best(std::move(best_so_far)) {}
    AlignmentResult best;
};

/// X has effective rank < 4: the pseudoinverse fit is underdetermined and
/// the projection through the algebra is meaningless.
struct RankDeficientError : std::runtime_error {
    RankDeficientError(const std::string& what, int r)
        : std::runtime_error(what), rank(r) {}
    int rank;
};

/// Componentwise (Frobenius) squared misfit of lambda(e) X against Y.
/// Columns of X and Y are the paired vectors.
double objective(const AlgebraElement& e, const Mat& x, const Mat& y);

/// Direct nonlinear least squares over the six algebra coordinates:
/// quasi-Newton (BFGS) with central-difference gradients and Armijo
/// backtracking, Nelder-Mead restart on repeated line-search failure, and a
/// Gauss-Newton polish of the converged point.
AlignmentResult align_direct(const Mat& x, const Mat& y, const SolverOptions& opts = {});

/// Pseudoinverse fit followed by projection through the algebra:
/// Lambda = exp(project(log(Y X^+))).
AlignmentResult align_lie(const Mat& x, const Mat& y);

struct ErrorNorms {
    double frob = 0;
    double max_abs = 0;
};

ErrorNorms error_norms(const Mat& estimated, const Mat& truth);

}  // namespace lalign

#endif
