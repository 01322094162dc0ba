// Command-line front end: align vector sets from CSV files, run the built-in
// sanity check, run the benchmark grid, and generate synthetic datasets.
//
// Exit codes: 0 success, 2 solver warnings (rank/ambiguity), 1 errors.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lalign/align.hpp"
#include "lalign/bench.hpp"
#include "lalign/euclid.hpp"
#include "lalign/io.hpp"
#include "lalign/lorentz.hpp"

using nlohmann::json;

namespace {

int fail(const std::string& category, const std::string& message) {
    std::cerr << "error: " << category << ": " << message << "\n";
    return 1;
}

std::string format_matrix(const lalign::Mat& m, int digits) {
    std::string out;
    char buf[64];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%*.*g", digits + 8, digits, m(i, j));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

json matrix_to_json(const lalign::Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

struct SanityCase {
    lalign::Mat x;
    lalign::Mat y;
    lalign::Mat lambda;
};

// Four unit-timelike vectors and an x-boost with beta = 0.3.
SanityCase sanity_case() {
    const double r2 = std::sqrt(2.0);
    const double beta = 0.3;
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    SanityCase c;
    c.x = lalign::Mat{{1, r2, r2, r2}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    c.lambda = lalign::Mat{{gamma, -beta * gamma, 0, 0},
                           {-beta * gamma, gamma, 0, 0},
                           {0, 0, 1, 0},
                           {0, 0, 0, 1}};
    c.y = c.lambda * c.x;
    return c;
}

void emit_report(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw lalign::ParseError(out_path + ": cannot open for writing");
    out << text;
}

int run_align(const std::string& file_a, const std::string& file_b, const std::string& group,
              std::string method, const std::string& out_path, bool as_json) {
    if (method.empty()) method = group == "lorentz" ? "lie" : "kabsch";
    const bool lorentz_method = method == "lie" || method == "direct";
    if ((group == "lorentz") != lorentz_method)
        return fail("invalid-input", "method '" + method + "' is not valid for group '" + group + "'");

    try {
        json report;
        std::string text;
        std::vector<std::string> warnings;
        report["group"] = group;

        if (group == "lorentz") {
            auto vsa = lalign::read_four_vectors(file_a);
            auto vsb = lalign::read_four_vectors(file_b);
            if (vsa.size() != vsb.size())
                return fail("shape-mismatch", "frame A has " + std::to_string(vsa.size()) +
                                                  " rows, frame B has " + std::to_string(vsb.size()));
            lalign::Mat x = lalign::four_vectors_to_columns(vsa);
            lalign::Mat y = lalign::four_vectors_to_columns(vsb);
            lalign::AlignmentResult res =
                method == "lie" ? lalign::align_lie(x, y) : lalign::align_direct(x, y);
            warnings = res.diagnostics;
            lalign::LorentzDefect defect = lalign::lorentz_defect(res.lambda.matrix());

            report["method"] = lalign::method_name(res.method);
            report["matrix"] = matrix_to_json(res.lambda.matrix());
            report["zeta"] = res.algebra.zeta;
            report["theta"] = res.algebra.theta;
            report["residual"] = res.residual;
            report["iterations"] = res.iterations;
            report["diagnostics"] = res.diagnostics;
            report["eta_defect"] = defect.eta_defect;
            report["det_defect"] = defect.det_defect;

            char buf[256];
            text = "lorentz alignment (" + std::string(lalign::method_name(res.method)) + ")\n";
            text += format_matrix(res.lambda.matrix(), 6);
            std::snprintf(buf, sizeof(buf), "zeta     %12.6g %12.6g %12.6g\n", res.algebra.zeta[0],
                          res.algebra.zeta[1], res.algebra.zeta[2]);
            text += buf;
            std::snprintf(buf, sizeof(buf), "theta    %12.6g %12.6g %12.6g\n", res.algebra.theta[0],
                          res.algebra.theta[1], res.algebra.theta[2]);
            text += buf;
            std::snprintf(buf, sizeof(buf), "residual %.6g\niterations %d\n", res.residual,
                          res.iterations);
            text += buf;
        } else {
            auto vsa = lalign::read_three_vectors(file_a);
            auto vsb = lalign::read_three_vectors(file_b);
            if (vsa.size() != vsb.size())
                return fail("shape-mismatch", "frame A has " + std::to_string(vsa.size()) +
                                                  " rows, frame B has " + std::to_string(vsb.size()));
            lalign::Mat a = lalign::three_vectors_to_columns(vsa);
            lalign::Mat b = lalign::three_vectors_to_columns(vsb);

            lalign::Mat rotation(3, 3);
            if (method == "kabsch") {
                lalign::KabschResult kr = lalign::kabsch(a, b);
                rotation = kr.rotation;
                if (kr.ambiguous) warnings.push_back("ambiguous alignment: degenerate cross-covariance");
            } else if (method == "horn") {
                lalign::HornResult hr = lalign::horn(a, b);
                rotation = lalign::quat_to_matrix(hr.q);
                if (hr.ambiguous) warnings.push_back("ambiguous alignment: near-degenerate eigenvalue gap");
                report["quaternion"] = {hr.q.q0, hr.q.q1, hr.q.q2, hr.q.q3};
            } else {
                return fail("invalid-input", "unknown method '" + method + "'");
            }
            double residual = (b - rotation * a).frobenius_norm();
            residual *= residual;

            report["method"] = method;
            report["matrix"] = matrix_to_json(rotation);
            report["residual"] = residual;
            report["diagnostics"] = warnings;

            text = "rotation alignment (" + method + ")\n" + format_matrix(rotation, 6);
            if (report.contains("quaternion")) {
                char buf[256];
                const auto& q = report["quaternion"];
                std::snprintf(buf, sizeof(buf), "quaternion %12.6g %12.6g %12.6g %12.6g\n",
                              q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                              q[3].get<double>());
                text += buf;
            }
            char buf[128];
            std::snprintf(buf, sizeof(buf), "residual %.6g\n", residual);
            text += buf;
        }

        for (const std::string& w : warnings) text += "warning: " + w + "\n";
        emit_report(out_path, as_json ? report.dump(2) + "\n" : text);
        return warnings.empty() ? 0 : 2;
    } catch (const lalign::ParseError& e) {
        return fail("parse-failure", e.what());
    } catch (const lalign::RankDeficientError& e) {
        return fail("rank-deficient", e.what());
    } catch (const lalign::NotInIdentityComponent& e) {
        return fail("not-in-identity-component", e.what());
    } catch (const lalign::AlignNonConvergence& e) {
        return fail("non-convergence", e.what());
    } catch (const lalign::InvalidInput& e) {
        return fail("invalid-input", e.what());
    }
}

int run_sanity() {
    SanityCase c = sanity_case();
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    lalign::AlignmentResult lie = lalign::align_lie(c.x, c.y);
    auto t1 = clock::now();
    lalign::AlignmentResult direct = lalign::align_direct(c.x, c.y);
    auto t2 = clock::now();

    // the same algebra element through both exponential paths
    lalign::Mat lambda_closed = lie.lambda.matrix();
    lalign::Mat lambda_series = lalign::mat_exp_series(lalign::algebra_to_matrix(lie.algebra));

    double err_lie = lalign::error_norms(lambda_closed, c.lambda).max_abs;
    double err_series = lalign::error_norms(lambda_series, c.lambda).max_abs;
    double err_direct = lalign::error_norms(direct.lambda.matrix(), c.lambda).max_abs;
    double det_closed = std::fabs(lalign::det(lambda_closed) - 1.0);
    double det_series = std::fabs(lalign::det(lambda_series) - 1.0);
    double time_lie = std::chrono::duration<double>(t1 - t0).count();
    double time_direct = std::chrono::duration<double>(t2 - t1).count();

    std::printf("boost recovery, beta = 0.3:\n");
    std::printf("  lie-algebra   max elementwise error %.3e   wall time %.6f s\n", err_lie, time_lie);
    std::printf("  direct        max elementwise error %.3e   wall time %.6f s\n", err_direct,
                time_direct);
    std::printf("exponential paths on the recovered generator:\n");
    std::printf("  closed form   |det - 1| = %.3e\n", det_closed);
    std::printf("  series        |det - 1| = %.3e   max diff vs truth %.3e\n", det_series, err_series);

    bool ok = true;
    auto require = [&](bool cond, const char* what, double value) {
        if (!cond) {
            std::printf("FAIL %s = %.3e\n", what, value);
            ok = false;
        }
    };
    require(err_lie <= 1e-8, "lie-algebra max error (limit 1e-8)", err_lie);
    require(err_direct <= 1e-6, "direct max error (limit 1e-6)", err_direct);
    require(det_closed <= 1e-13, "closed-form |det-1| (limit 1e-13)", det_closed);
    require(det_series <= 1e-13, "series |det-1| (limit 1e-13)", det_series);
    require(err_lie <= err_direct || err_direct <= 1e-6, "lie error vs direct error", err_lie);
    std::printf("%s\n", ok ? "sanity: all checks passed" : "sanity: FAILED");
    return ok ? 0 : 1;
}

bool parse_methods(const std::vector<std::string>& names, std::vector<lalign::Method>& out) {
    out.clear();
    for (const std::string& s : names) {
        if (s == "direct")
            out.push_back(lalign::Method::direct);
        else if (s == "lie" || s == "lie-algebra")
            out.push_back(lalign::Method::lie_algebra);
        else
            return false;
    }
    return true;
}

int run_benchmark_cmd(const std::string& config_path, std::vector<int> ns, std::vector<double> eps,
                      int trials, std::uint64_t seed, std::vector<std::string> method_names,
                      bool noise_after_boost, const std::string& out_path,
                      const std::string& summary_path, bool have_trials, bool have_seed) {
    lalign::BenchConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) return fail("parse-failure", config_path + ": cannot open file");
            json j = json::parse(in);
            if (j.contains("n_vectors")) cfg.n_vectors = j["n_vectors"].get<std::vector<int>>();
            if (j.contains("noise_eps")) cfg.noise_eps = j["noise_eps"].get<std::vector<double>>();
            if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("noise_after_boost")) cfg.noise_after_boost = j["noise_after_boost"].get<bool>();
            if (j.contains("methods")) {
                auto names = j["methods"].get<std::vector<std::string>>();
                if (!parse_methods(names, cfg.methods))
                    return fail("invalid-input", "unknown method in config");
            }
        }
        if (!ns.empty()) cfg.n_vectors = ns;
        if (!eps.empty()) cfg.noise_eps = eps;
        if (have_trials) cfg.trials = trials;
        if (have_seed) cfg.seed = seed;
        if (noise_after_boost) cfg.noise_after_boost = true;
        if (!method_names.empty() && !parse_methods(method_names, cfg.methods))
            return fail("invalid-input", "unknown method name (use direct, lie-algebra)");

        std::vector<lalign::TrialRecord> records = lalign::run_benchmark(cfg);
        std::vector<lalign::CellSummary> cells = lalign::summarize(records);

        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) return fail("parse-failure", out_path + ": cannot open for writing");
            lalign::write_trials_csv(out, records);
        }
        if (!summary_path.empty()) {
            std::ofstream out(summary_path);
            if (!out) return fail("parse-failure", summary_path + ": cannot open for writing");
            lalign::write_summary_csv(out, cells);
        }

        std::printf("rng: mt19937_64 + Box-Muller, trial seed = splitmix64 chain over (seed, n, eps, trial)\n");
        std::printf("seed: %llu   trials per cell: %d\n", static_cast<unsigned long long>(cfg.seed),
                    cfg.trials);
        std::printf("%5s %8s %-12s %14s %14s %13s %13s\n", "n", "eps", "method", "median_frob",
                    "median_max", "mean_time_s", "med_time_s");
        for (const auto& c : cells)
            std::printf("%5d %8g %-12s %14.6e %14.6e %13.3e %13.3e\n", c.n, c.eps,
                        lalign::method_name(c.method), c.median_frob, c.median_max, c.mean_time_s,
                        c.median_time_s);
        return 0;
    } catch (const json::exception& e) {
        return fail("parse-failure", std::string("config: ") + e.what());
    } catch (const lalign::InvalidInput& e) {
        return fail("invalid-input", e.what());
    }
}

int run_generate(int n, double eps, std::uint64_t seed, const std::string& out_a,
                 const std::string& out_b, std::vector<double> zeta, std::vector<double> theta) {
    if (n < 1) return fail("invalid-input", "n must be >= 1");
    if ((!zeta.empty() && zeta.size() != 3) || (!theta.empty() && theta.size() != 3))
        return fail("invalid-input", "--zeta and --theta take exactly 3 comma-separated values");
    if (zeta.empty() != theta.empty())
        return fail("invalid-input", "--zeta and --theta must be given together");

    try {
        lalign::GaussianRng rng(lalign::trial_seed(seed, n, eps, 0));
        lalign::AlgebraElement e;
        if (!zeta.empty()) {
            e.zeta = {zeta[0], zeta[1], zeta[2]};
            e.theta = {theta[0], theta[1], theta[2]};
        } else {
            e = lalign::sample_lorentz(rng);
        }
        lalign::LorentzMatrix lambda = lalign::exp_lorentz(e);

        std::vector<lalign::FourVector> frame_a = lalign::sample_unit_timelike(rng, n);
        std::vector<lalign::FourVector> frame_b = lalign::perturb(frame_a, eps, rng);
        for (auto& v : frame_b) v = lalign::apply(lambda, v);

        lalign::write_four_vectors(out_a, frame_a);
        lalign::write_four_vectors(out_b, frame_b);

        std::printf("zeta %.17g %.17g %.17g\n", e.zeta[0], e.zeta[1], e.zeta[2]);
        std::printf("theta %.17g %.17g %.17g\n", e.theta[0], e.theta[1], e.theta[2]);
        std::printf("wrote %d vectors to %s and %s\n", n, out_a.c_str(), out_b.c_str());
        return 0;
    } catch (const lalign::ParseError& e) {
        return fail("parse-failure", e.what());
    } catch (const lalign::InvalidInput& e) {
        return fail("invalid-input", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal alignment of measured vector sets under SO(3) and SO(3,1)+"};
    app.require_subcommand(1);

    // align
    auto* align = app.add_subcommand("align", "align frame-A vectors onto frame-B vectors");
    std::string file_a, file_b, group = "lorentz", method, out_path;
    bool as_json = false;
    align->add_option("frame_a", file_a, "CSV of frame-A vectors (rows, header t,x,y,z or x,y,z)")
        ->required();
    align->add_option("frame_b", file_b, "CSV of frame-B vectors, same row count")->required();
    align->add_option("--group", group, "transformation group")
        ->check(CLI::IsMember({"lorentz", "so3"}));
    align->add_option("--method", method, "lorentz: direct|lie; so3: kabsch|horn")
        ->check(CLI::IsMember({"direct", "lie", "kabsch", "horn"}));
    align->add_option("--out", out_path, "write the report to this file instead of stdout");
    align->add_flag("--json", as_json, "emit the report as JSON");

    // sanity
    auto* sanity = app.add_subcommand("sanity", "run the built-in boost recovery check");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "run the accuracy/timing benchmark grid");
    std::string config_path, trials_out, summary_out;
    std::vector<int> ns;
    std::vector<double> eps_list;
    std::vector<std::string> method_names;
    int trials = 1000;
    std::uint64_t seed = 0;
    bool noise_after_boost = false;
    bench->add_option("--config", config_path, "JSON config (n_vectors, noise_eps, trials, seed, methods)");
    bench->add_option("--n", ns, "vector counts")->delimiter(',');
    bench->add_option("--eps", eps_list, "noise levels")->delimiter(',');
    auto* trials_opt = bench->add_option("--trials", trials, "trials per cell");
    auto* seed_opt = bench->add_option("--seed", seed, "master seed");
    bench->add_option("--methods", method_names, "subset of direct,lie-algebra")->delimiter(',');
    bench->add_flag("--noise-after-boost", noise_after_boost,
                    "apply measurement noise after boosting (default: before, in frame B)");
    bench->add_option("--out", trials_out, "trial CSV path");
    bench->add_option("--summary", summary_out, "summary CSV path");

    // generate
    auto* gen = app.add_subcommand("generate", "write a synthetic frame-A/frame-B dataset");
    int gen_n = 8;
    double gen_eps = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_a, gen_b;
    std::vector<double> gen_zeta, gen_theta;
    gen->add_option("--n", gen_n, "number of vectors")->required();
    gen->add_option("--eps", gen_eps, "noise level");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out-a", gen_a, "frame-A CSV path")->required();
    gen->add_option("--out-b", gen_b, "frame-B CSV path")->required();
    gen->add_option("--zeta", gen_zeta, "boost vector (default: sample one)")->delimiter(',');
    gen->add_option("--theta", gen_theta, "rotation vector")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    if (align->parsed()) return run_align(file_a, file_b, group, method, out_path, as_json);
    if (sanity->parsed()) return run_sanity();
    if (bench->parsed())
        return run_benchmark_cmd(config_path, ns, eps_list, trials, seed, method_names,
                                 noise_after_boost, trials_out, summary_out, trials_opt->count() > 0,
                                 seed_opt->count() > 0);
    if (gen->parsed()) return run_generate(gen_n, gen_eps, gen_seed, gen_a, gen_b, gen_zeta, gen_theta);
    return 1;
}
