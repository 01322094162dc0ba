#ifndef LALIGN_BENCH_HPP
#define LALIGN_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "lalign/align.hpp"
#include "lalign/lorentz.hpp"

namespace lalign {

/// mt19937_64 with an internal Box-Muller gaussian, so draws are bit-exact
/// for a given seed independent of the standard library's distributions.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();

    /// N(0, sigma), sigma a standard deviation.
    double gaussian(double sigma);

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

/// Per-trial seed: splitmix64-chained hash of (master, n, eps, trial), so
/// trials are reproducible independent of execution order.
std::uint64_t trial_seed(std::uint64_t master, int n, double eps, int trial_id);

struct BenchConfig {
    std::vector<int> n_vectors{4, 8, 16};
    std::vector<double> noise_eps{0.0, 0.01, 0.1};
    int trials = 1000;
    std::uint64_t seed = 0;
    std::vector<Method> methods{Method::direct, Method::lie_algebra};
    bool noise_after_boost = false;  // default: perturb in frame B, then boost
};

struct TrialRecord {
    int trial_id = 0;
    int n = 0;
    double eps = 0;
    Method method = Method::direct;
    double frob_error = 0;
    double max_error = 0;
    double wall_time_s = 0;
    bool converged = false;
    std::uint64_t seed_used = 0;
};

struct CellSummary {
    int n = 0;
    double eps = 0;
    Method method = Method::direct;
    double median_frob = 0;
    double p5_frob = 0;
    double p95_frob = 0;
    double median_max = 0;
    double mean_time_s = 0;
    double median_time_s = 0;  // reported in tables; not part of the CSV schema
};

/// n unit-timelike vectors: spatial components N(0, sigma), time component
/// fixed by the norm, so minkowski_inner(v, v) = -1 exactly.
std::vector<FourVector> sample_unit_timelike(GaussianRng& rng, int n, double sigma = 0.3);

/// Add N(0, eps) to the spatial components and recompute the time component;
/// outputs stay unit timelike.
std::vector<FourVector> perturb(const std::vector<FourVector>& vs, double eps, GaussianRng& rng);

/// Six independent normal draws: zeta ~ N(0, sigma_zeta)^3, theta ~ N(0, sigma_theta)^3.
AlgebraElement sample_lorentz(GaussianRng& rng, double sigma_zeta = 0.2, double sigma_theta = 1.0);

/// Full grid run; individual trial failures are recorded (converged = false),
/// never aborting the run. Deterministic for a given config.
std::vector<TrialRecord> run_benchmark(const BenchConfig& cfg);

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

/// Header: trial_id,n,eps,method,frob_error,max_error,wall_time_s,converged,seed_used
void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);

/// Header: n,eps,method,median_frob,p5_frob,p95_frob,median_max,mean_time_s
void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace lalign

#endif
