// Acceptance suite: one test case per criterion, tagged [c1] .. [c9].
//
// Reference bias/SD values in criterion 4 are published benchmark results for
// the N=10,000 / S=10 / M=5 / L=50 design; tolerances are 3 * SD / sqrt(200).

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "splitsamp/splitsamp.hpp"

using namespace splitsamp;
using Catch::Approx;

namespace {

int acceptance_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

}  // namespace

// --------------------------------------------------------------------------
TEST_CASE("criterion 1: two-scheme oracle with piecewise-constant density",
          "[acceptance][c1]") {
    // Two hand-built schemes over [0, 4]: {[0,2),[2,4]} and {[0,1),[1,4]}.
    SchemeSet set;
    set.schemes = {{0.0, 2.0, 4.0}, {0.0, 1.0, 4.0}};
    // Piecewise-constant density with masses 0.5, 0.3, 0.2 on the three
    // working cells [0,1), [1,2), [2,4].
    auto density = [](double z) {
        if (z < 1.0) return 0.5;
        if (z < 2.0) return 0.3;
        return 0.1;
    };
    const auto prob =
        working_cell_probability(set, density, WeightMode::density_conditional);
    REQUIRE(prob.size() == 3);
    CHECK(prob[0] == Approx(0.5).margin(1e-8));
    CHECK(prob[1] == Approx(0.3).margin(1e-8));
    CHECK(prob[2] == Approx(0.2).margin(1e-8));
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 2: reassignment replays match closed-form probabilities",
          "[acceptance][c2]") {
    const auto plan = build_shifting_plan(4, 4, SupportBox::box1d(0, 6));
    const int replays = 1000000;
    for (int s = 1; s <= plan.S; ++s) {
        for (int m = 1; m <= plan.M; ++m) {
            const auto cov = covered_working_cells(plan, s, m);
            if (cov.empty()) continue;  // s=1, m=1
            // Closed form: 1/(s-1) for m=1, 1/S interior, 1/(S-s+1) for m=M.
            const double p_closed =
                m == 1 ? 1.0 / (s - 1)
                       : (m == plan.M ? 1.0 / (plan.S - s + 1) : 1.0 / plan.S);
            REQUIRE(static_cast<int>(cov.size()) ==
                    static_cast<int>(std::lround(1.0 / p_closed)));

            DiscretizedDataset ds;
            ds.plan = plan;
            ds.records.resize(replays);
            for (int i = 0; i < replays; ++i) {
                ds.records[i].id = i;
                ds.records[i].s = s;
                ds.records[i].m = {m};
                ds.records[i].v = {0.0};
            }
            const auto synth = synthesize(ds, 1000 + 17 * s + m);
            std::vector<long> counts(plan.B() + 1, 0);
            for (int i = 0; i < replays; ++i) ++counts[synth.b[0][i]];
            double tv = 0.0;
            for (int b = 1; b <= plan.B(); ++b) {
                const bool covered = std::find(cov.begin(), cov.end(), b) != cov.end();
                const double expect = covered ? p_closed : 0.0;
                tv += std::fabs(counts[b] / static_cast<double>(replays) - expect);
            }
            tv /= 2.0;
            INFO("s=" << s << " m=" << m << " TV=" << tv);
            CHECK(tv < 0.005);
        }
    }
}

// --------------------------------------------------------------------------
namespace {

// Sup distance between the synthetic sample's ECDF and the true CDF at the
// working boundaries, split into overall and interior (at least one full
// interval width away from the support edges).
struct EcdfDistances {
    double overall, interior;
};

// Averaged over replications so the comparison reflects the expected
// distances, not a single seed's draw.
EcdfDistances zdagger_distance(const Density& dist, int S, int N, std::uint64_t seed) {
    const auto plan = build_shifting_plan(S, 5, SupportBox::box1d(-1, 3));
    const auto grid = working_grid(plan);
    const double w = plan.cell_width(0);
    const int reps = 100;
    EcdfDistances acc{0.0, 0.0};
    for (int r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed = derive_seed(seed, r);
        std::vector<double> x(N);
        for (int i = 0; i < N; ++i) {
            CounterRng rng(rep_seed, stream::dgp_regressor, i);
            x[i] = sample(dist, rng);
        }
        const auto ds = discretize_dataset(x, plan, derive_seed(rep_seed, 1));
        const auto synth = synthesize(ds, derive_seed(rep_seed, 2));
        const auto e = ecdf(synth);
        EcdfDistances d{0.0, 0.0};
        for (double c : grid.boundaries[0]) {
            const double dev = std::fabs(e(c) - dist.cdf(c));
            d.overall = std::max(d.overall, dev);
            if (c >= -1.0 + w - 1e-9 && c <= 3.0 - w + 1e-9)
                d.interior = std::max(d.interior, dev);
        }
        acc.overall += d.overall / reps;
        acc.interior += d.interior / reps;
    }
    return acc;
}

}  // namespace

TEST_CASE("criterion 3: distributional convergence of the synthetic variable",
          "[acceptance][c3]") {
    const std::vector<std::pair<int, int>> sweep{{5, 25000}, {10, 50000}, {20, 100000}};
    for (const std::string tag : {"normal", "uniform"}) {
        const Density dist = make_distribution(tag);
        std::vector<double> overall, scaled_interior;
        for (std::size_t k = 0; k < sweep.size(); ++k) {
            const auto [S, N] = sweep[k];
            const auto d = zdagger_distance(dist, S, N, 9000 + 7 * k);
            overall.push_back(d.overall);
            scaled_interior.push_back(S * d.interior);
            INFO(tag << " S=" << S << " N=" << N << " overall=" << d.overall
                     << " interior=" << d.interior);
        }
        CHECK(overall[1] < overall[0]);
        CHECK(overall[2] < overall[1]);
        const double lo = *std::min_element(scaled_interior.begin(), scaled_interior.end());
        const double hi = *std::max_element(scaled_interior.begin(), scaled_interior.end());
        INFO(tag << " scaled interior distances: " << scaled_interior[0] << ", "
                 << scaled_interior[1] << ", " << scaled_interior[2]);
        CHECK(hi / lo < 3.0);
    }
}

// --------------------------------------------------------------------------
namespace {

struct TableCell {
    const char* case_tag;
    const char* dist_tag;
    double shift_bias, shift_sd, mid_bias, mid_sd;
};

// Reference mean bias and SD of estimates for the benchmark design.
constexpr TableCell kReferenceTable[] = {
    {"rhs", "normal", -0.0037, 0.0060, -0.0252, 0.0057},
    {"rhs", "logistic", -0.0003, 0.0046, -0.0101, 0.0046},
    {"rhs", "lognormal", -0.0022, 0.0050, -0.0174, 0.0051},
    {"rhs", "uniform", 0.0002, 0.0038, 0.0002, 0.0040},
    {"rhs", "exponential", 0.0023, 0.0094, 0.0005, 0.0102},
    {"rhs", "weibull", -0.0015, 0.0073, -0.0422, 0.0073},
    {"lhs", "normal", -0.0010, 0.0211, 0.0253, 0.0195},
    {"lhs", "logistic", -0.0017, 0.0239, 0.0322, 0.0236},
    {"lhs", "lognormal", -0.0010, 0.0215, 0.0362, 0.0216},
    {"lhs", "uniform", -0.0014, 0.0271, 0.0490, 0.0273},
    {"lhs", "exponential", -0.0017, 0.0125, 0.2077, 0.0128},
    {"lhs", "weibull", -0.0003, 0.0147, 0.0314, 0.0157},
    {"both", "normal", -0.0027, 0.0235, -0.0853, 0.0178},
    {"both", "logistic", 0.0156, 0.0269, -0.0788, 0.0213},
    {"both", "lognormal", 0.0104, 0.0243, -0.0752, 0.0190},
    {"both", "uniform", 0.0156, 0.0294, -0.0635, 0.0243},
    {"both", "exponential", 0.0006, 0.0132, 0.0797, 0.0116},
    {"both", "weibull", 0.0108, 0.0156, -0.0759, 0.0137},
};

}  // namespace

TEST_CASE("criterion 4: benchmark bias table at desk scale", "[acceptance][c4]") {
    std::printf("%-5s %-12s %-9s %10s %10s %10s  %s\n", "case", "dist", "estim",
                "bias", "reference", "tolerance", "status");
    for (const auto& cell : kReferenceTable) {
        SimConfig cfg = make_benchmark_config(cell.case_tag, cell.dist_tag);
        cfg.threads = acceptance_threads();
        const SimResult res = run_mc(cfg);
        const double tol_s = 3.0 * cell.shift_sd / std::sqrt(200.0);
        const double tol_m = 3.0 * cell.mid_sd / std::sqrt(200.0);
        const bool ok_s = std::fabs(res.mean_bias_shifting - cell.shift_bias) < tol_s;
        const bool ok_m = std::fabs(res.mean_bias_midpoint - cell.mid_bias) < tol_m;
        std::printf("%-5s %-12s %-9s %+10.4f %+10.4f %10.4f  %s\n", cell.case_tag,
                    cell.dist_tag, "shifting", res.mean_bias_shifting, cell.shift_bias,
                    tol_s, ok_s ? "ok" : "MISMATCH");
        std::printf("%-5s %-12s %-9s %+10.4f %+10.4f %10.4f  %s\n", cell.case_tag,
                    cell.dist_tag, "midpoint", res.mean_bias_midpoint, cell.mid_bias,
                    tol_m, ok_m ? "ok" : "MISMATCH");
        std::fflush(stdout);
        {
            INFO(cell.case_tag << "/" << cell.dist_tag << " shifting: got "
                               << res.mean_bias_shifting << ", reference "
                               << cell.shift_bias << " +- " << tol_s);
            CHECK(std::fabs(res.mean_bias_shifting - cell.shift_bias) < tol_s);
        }
        {
            INFO(cell.case_tag << "/" << cell.dist_tag << " midpoint: got "
                               << res.mean_bias_midpoint << ", reference "
                               << cell.mid_bias << " +- " << tol_m);
            CHECK(std::fabs(res.mean_bias_midpoint - cell.mid_bias) < tol_m);
        }
    }
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 5: exact estimator equivalences", "[acceptance][c5]") {
    SECTION("kappa equals per-scheme indicator least squares") {
        const auto plan = build_shifting_plan(3, 4, SupportBox::box1d(0, 6));
        const int n = 500;
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) {
            CounterRng rng(501, stream::dgp_regressor, i);
            x[i] = 6.0 * rng.next_double();
        }
        const auto ds = discretize_dataset(x, plan, 502);
        const auto synth = synthesize(ds, 503);
        const auto kappa = estimate_kappa(synth, ds);
        for (int s = 1; s <= plan.S; ++s) {
            const auto bnd = split_boundaries(plan, s);
            std::vector<int> cls(n);
            std::vector<int> used;
            for (int i = 0; i < n; ++i) {
                const auto it =
                    std::upper_bound(bnd.begin() + 1, bnd.end(), synth.z[0][i]);
                cls[i] = std::min<int>(static_cast<int>(it - bnd.begin()), plan.M);
                if (std::find(used.begin(), used.end(), cls[i]) == used.end())
                    used.push_back(cls[i]);
            }
            std::sort(used.begin(), used.end());
            Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, used.size());
            Eigen::VectorXd z(n);
            for (int i = 0; i < n; ++i) {
                const auto col = std::find(used.begin(), used.end(), cls[i]) - used.begin();
                D(i, col) = 1.0;
                z[i] = synth.z[0][i];
            }
            const Eigen::VectorXd coef = D.colPivHouseholderQr().solve(z);
            for (std::size_t j = 0; j < used.size(); ++j)
                CHECK(std::fabs(coef[j] - kappa.mean({s, used[j]})) < 1e-10);
        }
    }

    SECTION("pi equals indicator least squares on (s, m, l) groups") {
        const auto plan = build_shifting_plan(2, 3, SupportBox::box1d(0, 6));
        const int n = 300;
        std::vector<double> yv(n);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) {
            CounterRng rng(601, stream::dgp_regressor, i);
            yv[i] = 6.0 * rng.next_double();
            x[i] = rng.next_double();
        }
        const auto ds = discretize_dataset(yv, plan, 602);
        const auto synth = synthesize(ds, 603);
        const auto part = PartitionPlan::equal_width(0, 1, 4);
        const auto pi = estimate_pi(synth, ds, x, part);
        std::vector<std::vector<int>> keys(n);
        std::vector<std::vector<int>> used;
        for (int i = 0; i < n; ++i) {
            keys[i] = {ds.records[i].s, ds.records[i].m[0], part.bin(x[i])};
            if (std::find(used.begin(), used.end(), keys[i]) == used.end())
                used.push_back(keys[i]);
        }
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, used.size());
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) {
            const auto col = std::find(used.begin(), used.end(), keys[i]) - used.begin();
            D(i, col) = 1.0;
            z[i] = synth.z[0][i];
        }
        const Eigen::VectorXd coef = D.colPivHouseholderQr().solve(z);
        for (std::size_t j = 0; j < used.size(); ++j)
            CHECK(std::fabs(coef[j] - pi.mean(used[j])) < 1e-10);
    }

    SECTION("collapsed-form identity for the discretized-outcome pipeline") {
        const auto plan = build_shifting_plan(4, 5, SupportBox::box1d(-2, 4));
        const int n = 2000;
        std::vector<double> yv(n);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) {
            CounterRng rng(701, stream::dgp_regressor, i);
            x[i] = 2.0 * rng.next_double() - 1.0;
            yv[i] = 0.5 * x[i] + 4.0 * rng.next_double() - 1.5;
        }
        const auto ds = discretize_dataset(yv, plan, 702);
        const std::uint64_t synth_seed = 703;
        const auto synth = synthesize(ds, synth_seed);
        const auto part = PartitionPlan::equal_width(-1, 1, 10);
        const auto pi = estimate_pi(synth, ds, x, part);

        // Literal form: sum_m pi(s,m,l) * Pr[(s,m) | l].
        std::map<int, long> n_l;
        for (int i = 0; i < n; ++i) ++n_l[part.bin(x[i])];
        std::map<int, double> literal;
        for (const auto& [key, cell] : pi.cells)
            literal[key[2]] +=
                (cell.first / cell.second) * cell.second / n_l.at(key[2]);
        // Collapsed form: per-partition mean of the synthetic outcome.
        std::map<int, double> collapsed;
        for (int i = 0; i < n; ++i) collapsed[part.bin(x[i])] += synth.z[0][i];
        for (auto& [l, v] : collapsed) v /= n_l.at(l);
        for (const auto& [l, v] : literal)
            CHECK(std::fabs(v - collapsed.at(l)) < 1e-10);

        // And the pipeline's slope equals the collapsed-form regression.
        const auto r = estimate_lhs(ds, x, part, synth_seed);
        Eigen::VectorXd yt(n), xt(n);
        std::map<int, double> xmean;
        for (int i = 0; i < n; ++i) xmean[part.bin(x[i])] += x[i];
        for (auto& [l, v] : xmean) v /= n_l.at(l);
        for (int i = 0; i < n; ++i) {
            yt[i] = collapsed.at(part.bin(x[i]));
            xt[i] = xmean.at(part.bin(x[i]));
        }
        const auto rc = ols_core(yt, xt, Eigen::MatrixXd::Ones(n, 1));
        CHECK(std::fabs(r.beta[0] - rc.beta[0]) < 1e-10);
    }

    SECTION("degenerate plans reproduce ordinary least squares") {
        const int n = 40;
        const auto plan = build_shifting_plan(1, n + 1, SupportBox::box1d(0, 1));
        const auto grid = working_grid(plan);
        std::vector<double> x(grid.representatives[0]);
        Eigen::VectorXd y(n), xe(n);
        for (int i = 0; i < n; ++i) {
            CounterRng rng(801, stream::dgp_error, i);
            xe[i] = x[i];
            y[i] = 0.3 + 2.0 * x[i] + 0.05 * (rng.next_double() - 0.5);
        }
        const auto direct = ols_core(y, xe, Eigen::MatrixXd::Ones(n, 1));

        // Discretized regressor: each record alone in its own deterministic cell.
        const auto ds_x = discretize_dataset(x, plan, 802);
        const auto r_rhs = estimate_rhs(y, ds_x, Eigen::MatrixXd(), 803);
        CHECK(std::fabs(r_rhs.beta[0] - direct.beta[0]) < 1e-10);

        // Discretized outcome: y values at cell representatives (in reverse
        // order, so y is not collinear-by-construction with the row index),
        // one partition per record.
        std::vector<double> yv(n);
        Eigen::VectorXd ye(n);
        for (int i = 0; i < n; ++i) yv[i] = grid.representatives[0][n - 1 - i];
        for (int i = 0; i < n; ++i) ye[i] = yv[i];
        const auto ds_y = discretize_dataset(yv, plan, 804);
        const auto part = PartitionPlan::equal_width(0, 1, n);
        Eigen::VectorXd xr(n);
        for (int i = 0; i < n; ++i) xr[i] = x[i];
        const auto r_lhs = estimate_lhs(ds_y, xr, part, 805);
        const auto direct_lhs = ols_core(ye, xr, Eigen::MatrixXd::Ones(n, 1));
        CHECK(std::fabs(r_lhs.beta[0] - direct_lhs.beta[0]) < 1e-10);

        // Both sides discretized.
        const auto r_both =
            estimate_both(ds_y, ds_x, Eigen::MatrixXd(), std::nullopt, 806);
        const auto direct_both = ols_core(ye, xe, Eigen::MatrixXd::Ones(n, 1));
        CHECK(std::fabs(r_both.beta[0] - direct_both.beta[0]) < 1e-10);
    }
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 6: consistency sweep for the discretized regressor",
          "[acceptance][c6]") {
    struct Point {
        int N, S, R;
    };
    const std::vector<Point> sweep{{2000, 5, 200}, {10000, 10, 200}, {40000, 20, 100}};
    std::vector<double> bias, se, mid_bias;
    for (const auto& pt : sweep) {
        SimConfig cfg = make_benchmark_config("rhs", "normal", 606060);
        cfg.N = pt.N;
        cfg.S = pt.S;
        cfg.R = pt.R;
        cfg.threads = acceptance_threads();
        const auto res = run_mc(cfg);
        bias.push_back(std::fabs(res.mean_bias_shifting));
        se.push_back(res.sd_shifting / std::sqrt(static_cast<double>(res.replications)));
        mid_bias.push_back(std::fabs(res.mean_bias_midpoint));
        INFO("N=" << pt.N << " S=" << pt.S << " |bias|=" << bias.back()
                  << " se=" << se.back() << " |mid|=" << mid_bias.back());
    }
    // Shifting |bias| non-increasing within 2 combined MC standard errors.
    CHECK(bias[1] <= bias[0] + 2.0 * std::hypot(se[0], se[1]));
    CHECK(bias[2] <= bias[1] + 2.0 * std::hypot(se[1], se[2]));
    // Midpoint bias does not shrink: stays above half its smallest-N magnitude.
    CHECK(mid_bias[1] >= 0.5 * mid_bias[0]);
    CHECK(mid_bias[2] >= 0.5 * mid_bias[0]);
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 7: privacy accounting properties", "[acceptance][c7]") {
    // Degenerate single-cell plan reveals nothing.
    const auto p1 = build_shifting_plan(10, 1, SupportBox::box1d(0, 1));
    const auto rep1 = epsilon_delta(p1, 1000);
    CHECK(rep1.epsilon == 0.0);
    CHECK(rep1.delta == 0.0);

    // Epsilon non-decreasing in the number of cells at fixed S.
    double prev = -1.0;
    for (int M : {3, 5, 10}) {
        const auto plan = build_shifting_plan(10, M, SupportBox::box1d(0, 1));
        const auto rep = epsilon_delta(plan, 1000);
        INFO("M=" << M << " epsilon=" << rep.epsilon);
        CHECK(rep.epsilon >= prev);
        prev = rep.epsilon;
    }

    // Assignment distributions sum to 1 on random (plan, value) draws.
    CounterRng rng(70707, 7, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        const int S = 1 + static_cast<int>(rng.next_below(12));
        const int M = 1 + static_cast<int>(rng.next_below(12));
        const double lo = -3.0 + 3.0 * rng.next_double();
        const double hi = lo + 0.1 + 5.0 * rng.next_double();
        const auto plan = build_shifting_plan(S, M, SupportBox::box1d(lo, hi));
        const double z = lo + (hi - lo) * rng.next_double();
        const auto p = assignment_distribution(plan, z);
        double total = 0.0;
        for (double v : p) total += v;
        REQUIRE(std::fabs(total - 1.0) < 1e-12);
    }
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 8: Laplace-noise baseline comparison", "[acceptance][c8]") {
    // Noise variance identity at scale = width/epsilon.
    const SupportBox box = SupportBox::box1d(0, 6);
    const std::vector<double> zeros(100000, 0.0);
    const auto noisy = laplace_mechanism(zeros, 1.5, box, 808);  // scale 4
    double var = 0.0;
    for (double v : noisy) var += v * v;
    var /= noisy.size();
    CHECK(std::fabs(var - 2.0 * 16.0) / (2.0 * 16.0) < 0.05);

    // Wage-like discretized-outcome design: y = 2 + 0.5 x + e.
    const int n = 20000;
    const Density tn = truncated_normal_half();
    std::vector<double> yv(n);
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        CounterRng rx(909, stream::dgp_regressor, i);
        CounterRng re(909, stream::dgp_error, i);
        x[i] = sample(tn, rx);
        yv[i] = 2.0 + 0.5 * x[i] + sample(tn, re);
        y[i] = yv[i];
    }
    const SupportBox ybox = SupportBox::box1d(0.5, 4.0);
    const auto plan = build_shifting_plan(10, 6, ybox);
    const auto ds = discretize_dataset(yv, plan, 910);
    const auto part = PartitionPlan::equal_width(-1, 1, 50);
    const auto r_shift = estimate_lhs(ds, x, part, 911);

    const auto y_noised = laplace_mechanism(yv, 1.0, ybox, 912);
    Eigen::VectorXd yn(n);
    for (int i = 0; i < n; ++i) yn[i] = y_noised[i];
    const auto r_lap = ols_core(yn, x, Eigen::MatrixXd::Ones(n, 1));

    INFO("shifting beta=" << r_shift.beta[0] << " se=" << r_shift.se[0]
                          << "; laplace beta=" << r_lap.beta[0]
                          << " se=" << r_lap.se[0]);
    CHECK(std::fabs(r_shift.beta[0] - 0.5) < 0.05);
    CHECK(r_lap.se[0] >= 10.0 * r_shift.se[0]);
}

// --------------------------------------------------------------------------
TEST_CASE("criterion 9: byte-identical outputs under fixed seeds and any "
          "thread count",
          "[acceptance][c9]") {
    // Provider + analyst pipeline.
    const auto plan = build_shifting_plan(10, 6, SupportBox::box1d(-1, 3));
    const Density dist = make_distribution("lognormal");
    std::vector<double> x(5000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CounterRng rng(112, stream::dgp_regressor, i);
        x[i] = sample(dist, rng);
    }
    const auto ds1 = discretize_dataset(x, plan, 113);
    const auto ds2 = discretize_dataset(x, plan, 113);
    CHECK(to_string(dataset_to_csv(ds1)) == to_string(dataset_to_csv(ds2)));
    CHECK(to_string(synthetic_to_csv(synthesize(ds1, 114))) ==
          to_string(synthetic_to_csv(synthesize(ds2, 114))));
    CHECK(to_string(dataset_to_csv(discretize_dataset(x, plan, 999))) !=
          to_string(dataset_to_csv(ds1)));

    // Monte Carlo harness: thread count does not change a byte.
    SimConfig cfg = make_benchmark_config("rhs", "weibull", 115);
    cfg.N = 4000;
    cfg.R = 24;
    cfg.threads = 1;
    const auto res1 = to_string(sim_result_to_csv(run_mc(cfg)));
    cfg.threads = 4;
    const auto res4 = to_string(sim_result_to_csv(run_mc(cfg)));
    cfg.threads = 7;
    const auto res7 = to_string(sim_result_to_csv(run_mc(cfg)));
    CHECK(res1 == res4);
    CHECK(res1 == res7);

    // Laplace baseline.
    const SupportBox box = SupportBox::box1d(0, 1);
    CHECK(laplace_mechanism(x, 2.0, box, 116) == laplace_mechanism(x, 2.0, box, 116));
}
