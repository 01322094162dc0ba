// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Criteria mirror the project's contract: exact boost recovery,
// determinant quality, closed-form/series exponential equivalence, the
// Horn/Kabsch cross-check, exact recovery at zero noise, accuracy equivalence
// and timing ordering of the two Lorentz solvers on the benchmark grid, and
// the per-module invariant suites.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lalign/align.hpp"
#include "lalign/bench.hpp"
#include "lalign/euclid.hpp"
#include "lalign/lorentz.hpp"

using lalign::AlgebraElement;
using lalign::Mat;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const char* label, bool pass, double seconds, const std::string& detail) {
    std::printf("%s  criterion %d  %-34s  (%.2f s)  %s\n", pass ? "PASS" : "FAIL", id, label,
                seconds, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return std::string(buf);
}

AlgebraElement element(double z1, double z2, double z3, double t1, double t2, double t3) {
    AlgebraElement e;
    e.zeta = {z1, z2, z3};
    e.theta = {t1, t2, t3};
    return e;
}

struct BoostCase {
    Mat x{4, 4};
    Mat y{4, 4};
    Mat lambda{4, 4};
};

BoostCase boost_case() {
    double r2 = std::sqrt(2.0);
    double beta = 0.3, gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    BoostCase c;
    c.x = Mat{{1, r2, r2, r2}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    c.lambda = Mat{{gamma, -beta * gamma, 0, 0},
                   {-beta * gamma, gamma, 0, 0},
                   {0, 0, 1, 0},
                   {0, 0, 0, 1}};
    c.y = c.lambda * c.x;
    return c;
}

AlgebraElement random_element(std::mt19937_64& rng, double sz = 0.2, double st = 1.0) {
    std::normal_distribution<double> z(0.0, sz), t(0.0, st);
    return element(z(rng), z(rng), z(rng), t(rng), t(rng), t(rng));
}

void criterion_1_sanity() {
    Timer timer;
    BoostCase c = boost_case();
    double lie_err = lalign::error_norms(lalign::align_lie(c.x, c.y).lambda.matrix(), c.lambda).max_abs;
    double direct_err =
        lalign::error_norms(lalign::align_direct(c.x, c.y).lambda.matrix(), c.lambda).max_abs;
    double secs = timer.seconds();
    bool pass = lie_err <= 1e-8 && direct_err <= 1e-6 && secs < 1.0;
    report(1, "boost-case recovery", pass, secs,
           fmt("lie %.2e (<=1e-8), direct %.2e (<=1e-6)", lie_err, direct_err));
}

void criterion_2_determinant() {
    Timer timer;
    BoostCase c = boost_case();
    double worst = std::fabs(lalign::det(lalign::align_lie(c.x, c.y).lambda.matrix()) - 1.0);
    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 1000; ++i) {
        double d = std::fabs(lalign::det(lalign::exp_lorentz(random_element(rng)).matrix()) - 1.0);
        worst = std::max(worst, d);
    }
    double secs = timer.seconds();
    bool pass = worst <= 1e-13 && secs < 5.0;
    report(2, "determinant of exp", pass, secs, fmt("worst |det-1| %.2e (<=1e-13)", worst));
}

void criterion_3_exp_equivalence() {
    Timer timer;
    std::mt19937_64 rng(314159);
    double worst = 0;
    bool finite = true;
    auto check = [&](const AlgebraElement& e) {
        Mat closed = lalign::exp_lorentz_matrix(e);
        Mat series = lalign::mat_exp_series(lalign::algebra_to_matrix(e));
        finite = finite && closed.all_finite();
        double rel = (closed - series).frobenius_norm() / std::max(1.0, series.frobenius_norm());
        worst = std::max(worst, rel);
    };
    for (int i = 0; i < 10000; ++i) check(random_element(rng));
    std::normal_distribution<double> dir(0.0, 1.0);
    for (double scale = 1e-2; scale >= 0.9e-12; scale *= 0.1) {
        for (int rep = 0; rep < 20; ++rep) {
            double ux = dir(rng), uy = dir(rng), uz = dir(rng);
            double un = std::sqrt(ux * ux + uy * uy + uz * uz);
            ux /= un, uy /= un, uz /= un;
            // orthonormal partner for the lightlike family
            double wx = dir(rng), wy = dir(rng), wz = dir(rng);
            double d = wx * ux + wy * uy + wz * uz;
            wx -= d * ux, wy -= d * uy, wz -= d * uz;
            double wn = std::sqrt(wx * wx + wy * wy + wz * wz);
            wx /= wn, wy /= wn, wz /= wn;
            check(element(scale * ux, scale * uy, scale * uz, 0, 0, 0));  // pure boost
            check(element(0, 0, 0, scale * ux, scale * uy, scale * uz));  // pure rotation
            check(element(scale * ux, scale * uy, scale * uz, scale * wx, scale * wy, scale * wz));
        }
    }
    double secs = timer.seconds();
    bool pass = worst <= 1e-10 && finite && secs < 30.0;
    report(3, "closed form vs series exp", pass, secs,
           fmt("worst rel diff %.2e (<=1e-10), all finite: %s", worst, finite ? "yes" : "no"));
}

void criterion_4_horn_kabsch() {
    Timer timer;
    std::mt19937_64 rng(271828);
    std::normal_distribution<double> comp(0.0, 1.0), noise(0.0, 0.01);
    double worst = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        bool noisy = trial >= 1000;
        lalign::Quat q{comp(rng), comp(rng), comp(rng), comp(rng)};
        double qn = std::sqrt(lalign::quat_norm2(q));
        q = lalign::Quat{q.q0 / qn, q.q1 / qn, q.q2 / qn, q.q3 / qn};
        Mat r_true = lalign::quat_to_matrix(q);
        Mat a(3, 10);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 10; ++j) a(i, j) = comp(rng);
        Mat b = r_true * a;
        if (noisy)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 10; ++j) b(i, j) += noise(rng);
        Mat from_horn = lalign::quat_to_matrix(lalign::horn(a, b).q);
        Mat from_kabsch = lalign::kabsch(a, b).rotation;
        worst = std::max(worst, (from_horn - from_kabsch).frobenius_norm());
    }
    double secs = timer.seconds();
    bool pass = worst <= 1e-8 && secs < 10.0;
    report(4, "horn vs kabsch", pass, secs, fmt("worst Frobenius diff %.2e (<=1e-8)", worst));
}

void criterion_5_exact_recovery() {
    Timer timer;
    lalign::BenchConfig cfg;
    cfg.n_vectors = {4, 8, 16};
    cfg.noise_eps = {0.0};
    cfg.trials = 100;
    cfg.seed = 55001;
    auto records = lalign::run_benchmark(cfg);
    double worst = 0;
    int failures = 0;
    for (const auto& rec : records) {
        worst = std::max(worst, rec.frob_error);
        if (!rec.converged || rec.frob_error > 1e-6) ++failures;
    }
    double secs = timer.seconds();
    bool pass = failures == 0 && secs < 60.0;
    report(5, "exact recovery at eps = 0", pass, secs,
           fmt("worst frob error %.2e (<=1e-6), failing trials %d/%zu", worst, failures,
               records.size()));
}

void criteria_6_7_benchmark_grid() {
    Timer timer;
    lalign::BenchConfig cfg;
    cfg.trials = 200;
    cfg.seed = 66001;
    auto records = lalign::run_benchmark(cfg);
    auto cells = lalign::summarize(records);

    auto cell = [&](int n, double eps, lalign::Method m) -> const lalign::CellSummary& {
        for (const auto& c : cells)
            if (c.n == n && c.eps == eps && c.method == m) return c;
        throw std::logic_error("missing cell");
    };

    bool ratios_ok = true, monotone_ok = true, timing_ok = true;
    double worst_ratio = 0, worst_time_ratio = 1e300;
    std::printf("    n    eps   median(direct)  median(lie)   ratio   time(direct)  time(lie)\n");
    for (int n : cfg.n_vectors) {
        for (double eps : cfg.noise_eps) {
            const auto& cd = cell(n, eps, lalign::Method::direct);
            const auto& cl = cell(n, eps, lalign::Method::lie_algebra);
            double ratio = std::max(cl.median_frob / cd.median_frob, cd.median_frob / cl.median_frob);
            worst_ratio = std::max(worst_ratio, ratio);
            if (ratio > 2.0) ratios_ok = false;
            double time_ratio = cd.mean_time_s / cl.mean_time_s;
            worst_time_ratio = std::min(worst_time_ratio, time_ratio);
            if (cl.mean_time_s >= cd.mean_time_s) timing_ok = false;
            std::printf("  %3d  %5g   %13.4e  %12.4e  %6.2f   %11.3e  %10.3e\n", n, eps,
                        cd.median_frob, cl.median_frob, ratio, cd.mean_time_s, cl.mean_time_s);
        }
        for (auto m : {lalign::Method::direct, lalign::Method::lie_algebra}) {
            double m0 = cell(n, 0.0, m).median_frob;
            double m1 = cell(n, 0.01, m).median_frob;
            double m2 = cell(n, 0.1, m).median_frob;
            if (!(m0 < m1 && m1 < m2)) monotone_ok = false;
        }
    }
    double secs = timer.seconds();
    bool pass6 = ratios_ok && monotone_ok && secs < 600.0;
    report(6, "grid accuracy equivalence", pass6, secs,
           fmt("worst median ratio %.2f (<=2), monotone in eps: %s", worst_ratio,
               monotone_ok ? "yes" : "no"));
    report(7, "timing ordering lie < direct", timing_ok, secs,
           fmt("min speedup direct/lie %.1fx (must be > 1)", worst_time_ratio));
}

void criterion_8_invariants() {
    Timer timer;
    std::mt19937_64 rng(88001);
    std::normal_distribution<double> comp(0.0, 1.0);
    std::uniform_int_distribution<int> ncols(2, 16);
    bool ok = true;
    std::string first_failure;
    auto expect = [&](bool cond, const char* what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    };

    // SVD reconstruction and orthogonality
    for (int trial = 0; trial < 1000; ++trial) {
        int rows = (trial % 2 == 0) ? 3 : 4;
        Mat m(rows, ncols(rng));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = comp(rng);
        lalign::SvdResult d = lalign::svd(m);
        Mat sigma(m.rows(), m.cols());
        for (size_t i = 0; i < d.singular_values.size(); ++i)
            sigma(static_cast<int>(i), static_cast<int>(i)) = d.singular_values[i];
        double scale = std::max(1.0, m.frobenius_norm());
        expect((d.u * sigma * d.v.transposed() - m).frobenius_norm() <= 1e-10 * scale,
               "svd reconstruction");
        expect((d.u.transposed() * d.u - Mat::identity(m.rows())).frobenius_norm() <= 1e-12,
               "svd U orthogonality");
        expect((d.v.transposed() * d.v - Mat::identity(m.cols())).frobenius_norm() <= 1e-12,
               "svd V orthogonality");
    }

    // Penrose identities
    for (int trial = 0; trial < 200; ++trial) {
        Mat x(4, 4 + trial % 9);
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) x(i, j) = comp(rng);
        Mat p = lalign::pseudoinverse(x).pinv;
        expect((x * p * x - x).frobenius_norm() <= 1e-10 * std::max(1.0, x.frobenius_norm()),
               "penrose XpX");
        expect((p * x * p - p).frobenius_norm() <= 1e-10 * std::max(1.0, p.frobenius_norm()),
               "penrose pXp");
        expect(((x * p).transposed() - x * p).frobenius_norm() <= 1e-10, "penrose (Xp)^T");
        expect(((p * x).transposed() - p * x).frobenius_norm() <= 1e-10, "penrose (pX)^T");
    }

    // exp/log roundtrip
    for (int trial = 0; trial < 200; ++trial) {
        Mat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = 0.35 * comp(rng);
        if (m.frobenius_norm() > 2.0) m *= 2.0 / m.frobenius_norm();
        expect((lalign::mat_log_real(lalign::mat_exp_series(m)) - m).frobenius_norm() <= 1e-9,
               "exp/log roundtrip");
    }

    // eta-orthogonality of exponentials and closure under products
    for (int trial = 0; trial < 300; ++trial) {
        Mat a = lalign::exp_lorentz(random_element(rng)).matrix();
        Mat b = lalign::exp_lorentz(random_element(rng)).matrix();
        expect(lalign::lorentz_defect(a).eta_defect <= 1e-9, "eta defect of exp");
        expect(lalign::lorentz_defect(a * b).eta_defect <= 1e-9, "eta defect of product");
    }

    // projection minimality probe
    {
        Mat l0(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) l0(i, j) = comp(rng);
        Mat proj = lalign::algebra_to_matrix(lalign::project_to_algebra(l0));
        double best = (proj - l0).frobenius_norm();
        for (int probe = 0; probe < 10000; ++probe) {
            AlgebraElement d = element(comp(rng), comp(rng), comp(rng), comp(rng), comp(rng), comp(rng));
            double scale = std::pow(10.0, -(probe % 7));
            expect((proj + lalign::algebra_to_matrix(d) * scale - l0).frobenius_norm() >=
                       best - 1e-12,
                   "projection minimality");
        }
    }

    // benchmark determinism
    {
        lalign::BenchConfig cfg;
        cfg.n_vectors = {4};
        cfg.noise_eps = {0.01};
        cfg.trials = 10;
        cfg.seed = 7;
        auto a = lalign::run_benchmark(cfg);
        auto b = lalign::run_benchmark(cfg);
        expect(a.size() == b.size(), "determinism: record count");
        for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
            expect(a[i].frob_error == b[i].frob_error && a[i].max_error == b[i].max_error &&
                       a[i].seed_used == b[i].seed_used && a[i].converged == b[i].converged,
                   "determinism: record equality");
        }
    }

    double secs = timer.seconds();
    bool pass = ok && secs < 120.0;
    report(8, "module invariant suites", pass, secs,
           ok ? "all invariant suites hold" : ("first failure: " + first_failure));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1_sanity();
    criterion_2_determinant();
    criterion_3_exp_equivalence();
    criterion_4_horn_kabsch();
    criterion_5_exact_recovery();
    criteria_6_7_benchmark_grid();
    criterion_8_invariants();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
