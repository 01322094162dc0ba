#include "lalign/bench.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

namespace lalign {

double GaussianRng::uniform() {
    // 53 high bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::gaussian(double sigma) {
    if (sigma == 0.0) return 0.0;
    if (has_spare_) {
        has_spare_ = false;
        return spare_ * sigma;
    }
    // Box-Muller; u1 in (0, 1]
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle) * sigma;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, int n, double eps, int trial_id) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ static_cast<std::uint64_t>(n));
    s = mix64(s ^ std::bit_cast<std::uint64_t>(eps));
    s = mix64(s ^ static_cast<std::uint64_t>(trial_id));
    return s;
}

std::vector<FourVector> sample_unit_timelike(GaussianRng& rng, int n, double sigma) {
    if (n < 1) throw InvalidInput("sample_unit_timelike: n must be >= 1");
    std::vector<FourVector> vs(static_cast<size_t>(n));
    for (auto& v : vs) {
        v.x = rng.gaussian(sigma);
        v.y = rng.gaussian(sigma);
        v.z = rng.gaussian(sigma);
        v.t = std::sqrt(1.0 + v.x * v.x + v.y * v.y + v.z * v.z);
    }
    return vs;
}

std::vector<FourVector> perturb(const std::vector<FourVector>& vs, double eps, GaussianRng& rng) {
    if (eps < 0) throw InvalidInput("perturb: eps must be >= 0");
    std::vector<FourVector> out = vs;
    if (eps == 0.0) return out;
    for (auto& v : out) {
        v.x += rng.gaussian(eps);
        v.y += rng.gaussian(eps);
        v.z += rng.gaussian(eps);
        v.t = std::sqrt(1.0 + v.x * v.x + v.y * v.y + v.z * v.z);
    }
    return out;
}

AlgebraElement sample_lorentz(GaussianRng& rng, double sigma_zeta, double sigma_theta) {
    if (sigma_zeta < 0 || sigma_theta < 0) throw InvalidInput("sample_lorentz: sigmas must be >= 0");
    AlgebraElement e;
    for (auto& z : e.zeta) z = rng.gaussian(sigma_zeta);
    for (auto& t : e.theta) t = rng.gaussian(sigma_theta);
    return e;
}

namespace {

struct TrialProblem {
    Mat x;
    Mat y;
    Mat lambda_true;
};

TrialProblem make_problem(std::uint64_t seed, int n, double eps, bool noise_after_boost) {
    GaussianRng rng(seed);
    AlgebraElement e_true = sample_lorentz(rng);
    LorentzMatrix lambda = exp_lorentz(e_true);

    std::vector<FourVector> frame_a = sample_unit_timelike(rng, n);
    std::vector<FourVector> frame_b(frame_a.size());
    if (noise_after_boost) {
        for (size_t i = 0; i < frame_a.size(); ++i) frame_b[i] = apply(lambda, frame_a[i]);
        frame_b = perturb(frame_b, eps, rng);
    } else {
        // paper protocol: perturb the frame-B components first, then boost
        frame_b = perturb(frame_a, eps, rng);
        for (auto& v : frame_b) v = apply(lambda, v);
    }

    TrialProblem prob{Mat(4, n), Mat(4, n), lambda.matrix()};
    for (int j = 0; j < n; ++j) {
        const FourVector &a = frame_a[static_cast<size_t>(j)], &b = frame_b[static_cast<size_t>(j)];
        prob.x(0, j) = a.t;
        prob.x(1, j) = a.x;
        prob.x(2, j) = a.y;
        prob.x(3, j) = a.z;
        prob.y(0, j) = b.t;
        prob.y(1, j) = b.x;
        prob.y(2, j) = b.y;
        prob.y(3, j) = b.z;
    }
    return prob;
}

TrialRecord run_one(const TrialProblem& prob, Method method) {
    TrialRecord rec;
    rec.converged = true;
    auto t0 = std::chrono::steady_clock::now();
    ErrorNorms err{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    try {
        AlignmentResult res = method == Method::direct ? align_direct(prob.x, prob.y)
                                                       : align_lie(prob.x, prob.y);
        err = error_norms(res.lambda.matrix(), prob.lambda_true);
    } catch (const AlignNonConvergence& e) {
        rec.converged = false;
        err = error_norms(e.best.lambda.matrix(), prob.lambda_true);
    } catch (const std::exception&) {
        rec.converged = false;  // errors stay at +inf
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    rec.frob_error = err.frob;
    rec.max_error = err.max_abs;
    return rec;
}

}  // namespace

std::vector<TrialRecord> run_benchmark(const BenchConfig& cfg) {
    if (cfg.trials < 1) throw InvalidInput("run_benchmark: trials must be >= 1");
    for (int n : cfg.n_vectors)
        if (n < 4) throw InvalidInput("run_benchmark: n must be >= 4");
    for (double e : cfg.noise_eps)
        if (e < 0) throw InvalidInput("run_benchmark: eps must be >= 0");
    if (cfg.methods.empty()) throw InvalidInput("run_benchmark: no methods enabled");

    std::vector<TrialRecord> records;
    records.reserve(cfg.n_vectors.size() * cfg.noise_eps.size() * cfg.methods.size() *
                    static_cast<size_t>(cfg.trials));
    for (int n : cfg.n_vectors) {
        for (double eps : cfg.noise_eps) {
            // warm-up: 3 untimed solves per cell and method
            TrialProblem warm = make_problem(trial_seed(cfg.seed, n, eps, 0), n, eps, cfg.noise_after_boost);
            for (Method m : cfg.methods)
                for (int w = 0; w < 3; ++w) run_one(warm, m);

            for (int trial = 0; trial < cfg.trials; ++trial) {
                std::uint64_t seed = trial_seed(cfg.seed, n, eps, trial);
                TrialProblem prob = make_problem(seed, n, eps, cfg.noise_after_boost);
                for (Method m : cfg.methods) {
                    TrialRecord rec = run_one(prob, m);
                    rec.trial_id = trial;
                    rec.n = n;
                    rec.eps = eps;
                    rec.method = m;
                    rec.seed_used = seed;
                    records.push_back(rec);
                }
            }
        }
    }
    return records;
}

namespace {

double percentile(std::vector<double> sorted, double p) {
    if (sorted.empty()) return 0;
    double idx = p / 100.0 * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(idx);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw InvalidInput("summarize: no records");
    std::vector<CellSummary> cells;
    for (const TrialRecord& r : records) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
            return c.n == r.n && c.eps == r.eps && c.method == r.method;
        });
        if (it == cells.end()) cells.push_back(CellSummary{r.n, r.eps, r.method, 0, 0, 0, 0, 0});
    }
    for (CellSummary& c : cells) {
        std::vector<double> frob, maxe, times;
        double time_sum = 0;
        for (const TrialRecord& r : records) {
            if (r.n != c.n || r.eps != c.eps || r.method != c.method) continue;
            frob.push_back(r.frob_error);
            maxe.push_back(r.max_error);
            times.push_back(r.wall_time_s);
            time_sum += r.wall_time_s;
        }
        std::sort(frob.begin(), frob.end());
        std::sort(maxe.begin(), maxe.end());
        std::sort(times.begin(), times.end());
        c.median_frob = percentile(frob, 50);
        c.p5_frob = percentile(frob, 5);
        c.p95_frob = percentile(frob, 95);
        c.median_max = percentile(maxe, 50);
        c.mean_time_s = time_sum / static_cast<double>(times.size());
        c.median_time_s = percentile(times, 50);
    }
    return cells;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "trial_id,n,eps,method,frob_error,max_error,wall_time_s,converged,seed_used\n";
    for (const TrialRecord& r : records) {
        os << r.trial_id << ',' << r.n << ',' << format_double(r.eps) << ',' << method_name(r.method)
           << ',' << format_double(r.frob_error) << ',' << format_double(r.max_error) << ','
           << format_double(r.wall_time_s) << ',' << (r.converged ? "true" : "false") << ','
           << r.seed_used << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells) {
    os << "n,eps,method,median_frob,p5_frob,p95_frob,median_max,mean_time_s\n";
    for (const CellSummary& c : cells) {
        os << c.n << ',' << format_double(c.eps) << ',' << method_name(c.method) << ','
           << format_double(c.median_frob) << ',' << format_double(c.p5_frob) << ','
           << format_double(c.p95_frob) << ',' << format_double(c.median_max) << ','
           << format_double(c.mean_time_s) << '\n';
    }
}

}  // namespace lalign
