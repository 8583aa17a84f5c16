#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "splitsamp/distributions.hpp"
#include "splitsamp/errors.hpp"
#include "splitsamp/estimate.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/rng.hpp"

namespace splitsamp {

// --- Monte Carlo harness ----------------------------------------------------
//
// Reproduces the benchmark bias table: y = x*beta + e with one side (or both)
// discretized, estimated by the shifting pipeline and by the naive midpoint
// baseline.
//
// Conventions baked into the default configs:
//  * cfg.M counts full equal-width intervals; the shifting plan uses M+1
//    cells (the first cell of scheme s is the stub of width (s-1)h).  The
//    midpoint baseline is the degenerate S=1 plan with the same M intervals.
//  * rhs case: X drawn from the tagged distribution on [-1, 3], e ~ N(0, 0.25)
//    truncated to [-1, 1]; X discretized on [-1, 3].
//  * lhs case: X ~ N(0, 0.25) truncated to [-1, 1], e from the tagged
//    distribution; y discretized on [-2, 4]; partition = L equal-width bins
//    over [-1, 1].
//  * both case: as lhs, plus X discretized on [-1, 1] for the shifting
//    pipeline and on [-1, 3] for the midpoint baseline (the two baselines'
//    published grids differ; see README).

struct SimConfig {
    std::string case_tag = "rhs";   // rhs | lhs | both
    std::string dist_tag = "normal";
    int N = 10000;
    int R = 200;
    int S = 10;
    int M = 5;   // number of full-width intervals
    int L = 50;  // regressor partition bins (lhs case)
    double beta = 0.5;
    std::uint64_t seed = 0;
    int threads = 1;
    std::pair<double, double> x_support{-1.0, 3.0};
    std::pair<double, double> y_support{-2.0, 4.0};
    std::optional<std::pair<double, double>> x_support_midpoint;  // both case only

    void validate() const {
        if (case_tag != "rhs" && case_tag != "lhs" && case_tag != "both")
            throw invalid_argument_error("case must be rhs, lhs or both");
        if (N < S) throw invalid_argument_error("N must be >= S");
        if (R < 1) throw invalid_argument_error("R must be >= 1");
        if (M < 1 || S < 1 || L < 1) throw invalid_argument_error("S, M, L must be >= 1");
        if (threads < 1) throw invalid_argument_error("threads must be >= 1");
    }
};

inline SimConfig make_benchmark_config(const std::string& case_tag,
                                       const std::string& dist_tag,
                                       std::uint64_t seed = 20240817) {
    SimConfig cfg;
    cfg.case_tag = case_tag;
    cfg.dist_tag = dist_tag;
    cfg.seed = seed;
    if (case_tag == "both") {
        cfg.x_support = {-1.0, 1.0};
        cfg.x_support_midpoint = {{-1.0, 3.0}};
    }
    return cfg;
}

struct SimResult {
    double mean_bias_shifting = 0.0;
    double sd_shifting = 0.0;
    double mean_bias_midpoint = 0.0;
    double sd_midpoint = 0.0;
    int replications = 0;
    int failures = 0;
    SimConfig config;
};

struct DgpDraw {
    std::vector<double> x, eps, y;
};

// Draws the design for one replication; each record's variates come from its
// own counter stream so the draw is independent of batching.
inline DgpDraw gen_dgp(const SimConfig& cfg, std::uint64_t rep_seed) {
    const bool x_is_tagged = cfg.case_tag == "rhs";
    const Density dist = make_distribution(cfg.dist_tag);
    const Density tn = truncated_normal_half();
    DgpDraw d;
    d.x.resize(cfg.N);
    d.eps.resize(cfg.N);
    d.y.resize(cfg.N);
    for (int i = 0; i < cfg.N; ++i) {
        CounterRng rx(rep_seed, stream::dgp_regressor, static_cast<std::uint64_t>(i));
        CounterRng re(rep_seed, stream::dgp_error, static_cast<std::uint64_t>(i));
        d.x[i] = sample(x_is_tagged ? dist : tn, rx);
        d.eps[i] = sample(x_is_tagged ? tn : dist, re);
        d.y[i] = cfg.beta * d.x[i] + d.eps[i];
    }
    return d;
}

namespace detail {

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Eigen::VectorXd assigned_values(const DiscretizedDataset& ds) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(ds.records.size()));
    for (std::size_t i = 0; i < ds.records.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = ds.records[i].v[0];
    return v;
}

// One replication; returns (shifting bias, midpoint bias).
inline std::pair<double, double> run_replication(const SimConfig& cfg, int rep) {
    const std::uint64_t rep_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(rep));
    const DgpDraw d = gen_dgp(cfg, rep_seed);
    const auto y = to_eigen(d.y);
    const auto x = to_eigen(d.x);

    double shifting = 0.0, midpoint = 0.0;
    if (cfg.case_tag == "rhs") {
        const auto plan = build_shifting_plan(
            cfg.S, cfg.M + 1, SupportBox::box1d(cfg.x_support.first, cfg.x_support.second));
        const auto ds = discretize_dataset(d.x, plan, derive_seed(rep_seed, 101));
        shifting = estimate_rhs(y, ds, Eigen::MatrixXd(), derive_seed(rep_seed, 102)).beta[0];
        const auto plan0 = build_shifting_plan(
            1, cfg.M + 1, SupportBox::box1d(cfg.x_support.first, cfg.x_support.second));
        const auto ds0 = discretize_dataset(d.x, plan0, derive_seed(rep_seed, 103));
        midpoint = midpoint_ols(y, assigned_values(ds0)).beta[0];
    } else if (cfg.case_tag == "lhs") {
        const auto plan = build_shifting_plan(
            cfg.S, cfg.M + 1, SupportBox::box1d(cfg.y_support.first, cfg.y_support.second));
        const auto ds = discretize_dataset(d.y, plan, derive_seed(rep_seed, 101));
        const auto partition = PartitionPlan::equal_width(-1.0, 1.0, cfg.L);
        shifting = estimate_lhs(ds, x, partition, derive_seed(rep_seed, 102)).beta[0];
        const auto plan0 = build_shifting_plan(
            1, cfg.M + 1, SupportBox::box1d(cfg.y_support.first, cfg.y_support.second));
        const auto ds0 = discretize_dataset(d.y, plan0, derive_seed(rep_seed, 103));
        midpoint = midpoint_ols(assigned_values(ds0), x).beta[0];
    } else {  // both
        const auto plan_x = build_shifting_plan(
            cfg.S, cfg.M + 1, SupportBox::box1d(cfg.x_support.first, cfg.x_support.second));
        const auto plan_y = build_shifting_plan(
            cfg.S, cfg.M + 1, SupportBox::box1d(cfg.y_support.first, cfg.y_support.second));
        const auto ds_x = discretize_dataset(d.x, plan_x, derive_seed(rep_seed, 101));
        const auto ds_y = discretize_dataset(d.y, plan_y, derive_seed(rep_seed, 104));
        shifting = estimate_both(ds_y, ds_x, Eigen::MatrixXd(), std::nullopt,
                                 derive_seed(rep_seed, 102))
                       .beta[0];
        const auto xm_support = cfg.x_support_midpoint.value_or(cfg.x_support);
        const auto plan_x0 = build_shifting_plan(
            1, cfg.M + 1, SupportBox::box1d(xm_support.first, xm_support.second));
        const auto plan_y0 = build_shifting_plan(
            1, cfg.M + 1, SupportBox::box1d(cfg.y_support.first, cfg.y_support.second));
        const auto ds_x0 = discretize_dataset(d.x, plan_x0, derive_seed(rep_seed, 103));
        const auto ds_y0 = discretize_dataset(d.y, plan_y0, derive_seed(rep_seed, 105));
        midpoint = midpoint_ols(assigned_values(ds_y0), assigned_values(ds_x0)).beta[0];
    }
    return {shifting - cfg.beta, midpoint - cfg.beta};
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

inline double stdev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
}

}  // namespace detail

inline SimResult run_mc(const SimConfig& cfg) {
    cfg.validate();
    std::vector<double> bias_s(cfg.R), bias_m(cfg.R);
    std::vector<char> ok(cfg.R, 0);

    auto worker = [&](int first, int stride) {
        for (int rep = first; rep < cfg.R; rep += stride) {
            try {
                const auto [bs, bm] = detail::run_replication(cfg, rep);
                bias_s[rep] = bs;
                bias_m[rep] = bm;
                ok[rep] = 1;
            } catch (const std::exception&) {
                ok[rep] = 0;
            }
        }
    };
    if (cfg.threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker, t, cfg.threads);
        for (auto& th : pool) th.join();
    }

    SimResult res;
    res.config = cfg;
    std::vector<double> bs, bm;
    for (int rep = 0; rep < cfg.R; ++rep) {
        if (ok[rep]) {
            bs.push_back(bias_s[rep]);
            bm.push_back(bias_m[rep]);
        } else {
            ++res.failures;
        }
    }
    if (res.failures * 20 > cfg.R)
        throw numerical_error("more than 5% of replications failed");
    res.replications = static_cast<int>(bs.size());
    res.mean_bias_shifting = detail::mean(bs);
    res.sd_shifting = detail::stdev(bs);
    res.mean_bias_midpoint = detail::mean(bm);
    res.sd_midpoint = detail::stdev(bm);
    return res;
}

}  // namespace splitsamp
