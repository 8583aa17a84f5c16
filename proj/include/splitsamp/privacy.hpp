#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "splitsamp/errors.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/rng.hpp"

namespace splitsamp {

// --- Privacy accounting -----------------------------------------------------

struct PrivacyReport {
    double epsilon = 0.0;
    double delta = 0.0;
    std::string grid_description;
    // Value pair and working cell attaining the epsilon supremum.
    double worst_z = 0.0, worst_z_peer = 0.0;
    int worst_cell = 0;
};

// Distribution over working cells of the full mechanism (uniform split draw,
// discretization, uniform reassignment) for a single value z.  Sums to 1.
inline std::vector<double> assignment_distribution(const ShiftingPlan& plan, double z,
                                                   int p = 0) {
    std::vector<double> prob(plan.B(), 0.0);
    for (int s = 1; s <= plan.S; ++s) {
        const int m = cell_index(plan, s, z, p);
        const auto cov = covered_working_cells(plan, s, m, p);
        if (cov.empty())
            throw numerical_error("assignment_distribution: empty covered set");
        const double w = 1.0 / (plan.S * static_cast<double>(cov.size()));
        for (int b : cov) prob[b - 1] += w;
    }
    return prob;
}

// Realized (epsilon, delta) of the mechanism over a set of evaluation values:
//   epsilon = max over value pairs (z, z') and cells b with p_b(z') > 0 of
//             ln(p_b(z) / p_b(z')), taken over pairs where p_b(z) > 0;
//   delta   = max over (z, b) with p_b(z) > 0 such that some peer z' has
//             p_b(z') = 0, of p_b(z).
inline PrivacyReport epsilon_delta(const ShiftingPlan& plan,
                                   const std::vector<double>& values, int p = 0) {
    if (values.size() < 2)
        throw invalid_argument_error("epsilon_delta requires at least two values");
    PrivacyReport rep;
    rep.grid_description = std::to_string(values.size()) + " evaluation values";
    if (plan.M == 1) return rep;  // single-cell mechanism reveals nothing

    const int B = plan.B();
    std::vector<std::vector<double>> dist;
    dist.reserve(values.size());
    for (double z : values) dist.push_back(assignment_distribution(plan, z, p));

    for (int b = 0; b < B; ++b) {
        double maxp = 0.0, minp = std::numeric_limits<double>::infinity();
        std::size_t argmax = 0, argmin = 0;
        bool has_zero = false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double pb = dist[i][b];
            if (pb <= 0.0) {
                has_zero = true;
                continue;
            }
            if (pb > maxp) maxp = pb, argmax = i;
            if (pb < minp) minp = pb, argmin = i;
        }
        if (maxp > 0.0 && std::isfinite(minp)) {
            const double eps = std::log(maxp / minp);
            if (eps > rep.epsilon) {
                rep.epsilon = eps;
                rep.worst_z = values[argmax];
                rep.worst_z_peer = values[argmin];
                rep.worst_cell = b + 1;
            }
        }
        if (has_zero && maxp > rep.delta) rep.delta = maxp;
    }
    return rep;
}

// Default evaluation grid: midpoints of `grid` equal subdivisions of the support.
inline std::vector<double> default_privacy_grid(const ShiftingPlan& plan, int grid = 1000,
                                                int p = 0) {
    if (grid < 2) throw invalid_argument_error("privacy grid needs >= 2 points");
    std::vector<double> v(grid);
    const double al = plan.support.lower(p), width = plan.support.width(p);
    for (int i = 0; i < grid; ++i) v[i] = al + width * (i + 0.5) / grid;
    return v;
}

inline PrivacyReport epsilon_delta(const ShiftingPlan& plan, int grid = 1000, int p = 0) {
    PrivacyReport rep = epsilon_delta(plan, default_privacy_grid(plan, grid, p), p);
    rep.grid_description = std::to_string(grid) + "-point equispaced support grid";
    return rep;
}

// Laplace-noise baseline: adds independent Laplace noise of scale
// (a_u - a_l)/epsilon (sensitivity = support width) to each value.
inline std::vector<double> laplace_mechanism(const std::vector<double>& z, double epsilon,
                                             const SupportBox& support, std::uint64_t seed,
                                             int p = 0) {
    if (!(epsilon > 0)) throw invalid_argument_error("laplace_mechanism: epsilon must be > 0");
    const double scale = support.width(p) / epsilon;
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        CounterRng rng(seed, stream::laplace_noise, i);
        out[i] = z[i] + rng.next_laplace(scale);
    }
    return out;
}

}  // namespace splitsamp
