#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "splitsamp/errors.hpp"
#include "splitsamp/math.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/rng.hpp"

namespace splitsamp {

// --- Analyst side: synthetic-variable reconstruction ----------------------

struct SyntheticSample {
    // Column layout: b[p][i] is record i's working cell in dimension p (1..B),
    // z[p][i] the corresponding representative value.
    std::vector<std::vector<int>> b;
    std::vector<std::vector<double>> z;
    const DiscretizedDataset* source = nullptr;

    std::size_t size() const { return b.empty() ? 0 : b[0].size(); }
};

// Reassigns every record uniformly onto the working cells its split-sample
// cell covers (probability 1/(s-1), 1/S or 1/(S-s+1) for the first, interior
// and last cell).  Dimensions draw independently.  Record i's draws depend
// only on (seed, i, dimension), so results are thread-count invariant.
inline SyntheticSample synthesize(const DiscretizedDataset& ds, std::uint64_t seed) {
    const ShiftingPlan& plan = ds.plan;
    const WorkingGrid grid = working_grid(plan);
    SyntheticSample out;
    out.source = &ds;
    const int P = plan.P();
    const std::size_t n = ds.records.size();
    out.b.assign(P, std::vector<int>(n));
    out.z.assign(P, std::vector<double>(n));

    // Covered sets depend only on (s, m); precompute them.
    std::vector<std::vector<std::vector<int>>> covered(P);
    for (int p = 0; p < P; ++p) {
        covered[p].resize(plan.S * plan.M);
        for (int s = 1; s <= plan.S; ++s)
            for (int m = 1; m <= plan.M; ++m)
                covered[p][(s - 1) * plan.M + (m - 1)] = covered_working_cells(plan, s, m, p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = ds.records[i];
        CounterRng rng(seed, stream::reassignment, static_cast<std::uint64_t>(rec.id));
        for (int p = 0; p < P; ++p) {
            const auto& cov = covered[p][(rec.s - 1) * plan.M + (rec.m[p] - 1)];
            if (cov.empty())
                throw data_error("record with empty covered set (s=" +
                                 std::to_string(rec.s) + ", m=" + std::to_string(rec.m[p]) + ")");
            const int b = cov[rng.next_below(cov.size())];
            out.b[p][i] = b;
            out.z[p][i] = grid.representatives[p][b - 1];
        }
    }
    return out;
}

// --- Working-cell probability oracle --------------------------------------

enum class WeightMode {
    // Reassignment weights proportional to the density mass of each working
    // cell inside the covering split cell; the limit law, which reproduces the
    // underlying distribution's cell masses exactly.
    density_conditional,
    // Uniform weights over the covered cells: the law of the synthetic
    // variable actually produced by synthesize at finite S.
    uniform,
};

// Unconditional probability of each working cell under the chosen weight
// mode, via adaptive quadrature of the density over every split cell.
inline std::vector<double> working_cell_probability(
    const SchemeSet& set, const std::function<double(double)>& density,
    WeightMode mode = WeightMode::uniform, double tol = 1e-10) {
    const auto wb = set.working_boundaries();
    const int B = static_cast<int>(wb.size()) - 1;
    if (B < 1) throw invalid_argument_error("scheme set has no cells");
    auto guarded = [&](double x) {
        const double v = density(x);
        if (v < 0) throw invalid_argument_error("density returned a negative value");
        return v;
    };
    // Mass of each working cell (working boundaries refine every scheme).
    std::vector<double> cell_mass(B);
    for (int b = 0; b < B; ++b)
        cell_mass[b] = integrate(guarded, wb[b], wb[b + 1], tol / B);

    const double S = static_cast<double>(set.schemes.size());
    std::vector<double> prob(B, 0.0);
    for (const auto& sch : set.schemes) {
        for (std::size_t m = 1; m < sch.size(); ++m) {
            const double lo = sch[m - 1], hi = sch[m];
            if (hi - lo <= 1e-12) continue;
            // Working cells inside [lo, hi].
            const int first = static_cast<int>(
                std::lower_bound(wb.begin(), wb.end(), lo - 1e-12) - wb.begin());
            const int last = static_cast<int>(
                std::lower_bound(wb.begin(), wb.end(), hi - 1e-12) - wb.begin());
            const int k = last - first;
            if (k <= 0) continue;
            double group_mass = 0.0;
            for (int b = first; b < last; ++b) group_mass += cell_mass[b];
            for (int b = first; b < last; ++b) {
                const double weight = (mode == WeightMode::uniform)
                                          ? group_mass / k
                                          : cell_mass[b];
                prob[b] += weight / S;
            }
        }
    }
    const double total = std::accumulate(prob.begin(), prob.end(), 0.0);
    if (std::fabs(total - 1.0) > 1e-8)
        throw numerical_error("working-cell probabilities sum to " + std::to_string(total));
    return prob;
}

inline std::vector<double> working_cell_probability(
    const ShiftingPlan& plan, const std::function<double(double)>& density,
    WeightMode mode = WeightMode::uniform, double tol = 1e-10) {
    return working_cell_probability(SchemeSet::from_plan(plan), density, mode, tol);
}

// --- Empirical CDF --------------------------------------------------------

struct Ecdf {
    std::vector<double> sorted;  // ascending sample values

    double operator()(double x) const {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
        return static_cast<double>(it - sorted.begin()) / sorted.size();
    }
};

inline Ecdf ecdf(const std::vector<double>& values) {
    if (values.empty()) throw data_error("ecdf of empty sample");
    Ecdf e;
    e.sorted = values;
    std::sort(e.sorted.begin(), e.sorted.end());
    return e;
}

inline Ecdf ecdf(const SyntheticSample& sample, int p = 0) {
    if (sample.size() == 0) throw data_error("ecdf of empty sample");
    return ecdf(sample.z.at(p));
}

// Sup distance between an ECDF and a reference CDF over a set of points.
inline double sup_distance(const Ecdf& e, const std::function<double(double)>& cdf,
                           const std::vector<double>& points) {
    double d = 0.0;
    for (double x : points) d = std::max(d, std::fabs(e(x) - cdf(x)));
    return d;
}

}  // namespace splitsamp
