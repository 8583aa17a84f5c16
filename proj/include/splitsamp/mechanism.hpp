#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "splitsamp/errors.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/rng.hpp"

namespace splitsamp {

// --- Provider side: split assignment and discretization -------------------

struct DiscretizedRecord {
    std::int64_t id = 0;
    int s = 1;                  // split index, 1..S
    std::vector<int> m;         // cell index per sensitive dimension, 1..M
    std::vector<double> v;      // assigned representative value per dimension
};

struct DiscretizedDataset {
    ShiftingPlan plan;
    std::vector<DiscretizedRecord> records;
    // Non-sensitive columns passed through untouched, keyed by name.
    std::map<std::string, std::vector<double>> covariates;
    std::vector<bool> truncated_flags;  // set by truncate_unbounded
    std::size_t dropped = 0;            // records removed by truncation

    std::size_t size() const { return records.size(); }
};

// Independent uniform split assignment on {1..S}; record i's draw depends only
// on (seed, i), never on thread scheduling.
inline std::vector<int> assign_splits(std::size_t n, int S, std::uint64_t seed) {
    if (S < 1) throw invalid_argument_error("S must be >= 1");
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(seed, stream::split_assignment, i);
        s[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(S))) + 1;
    }
    return s;
}

// Cell index for value z under scheme s in dimension p: the unique m with
// c_{m-1} <= z < c_m (last cell closed at a_u).  The empty first cell of
// scheme 1 can never be returned.
inline int cell_index(const ShiftingPlan& plan, int s, double z, int p = 0) {
    const double al = plan.support.lower(p), au = plan.support.upper(p);
    if (z < al || z > au) throw out_of_support_error(z, p);
    if (plan.M == 1) return 1;
    const auto bnd = split_boundaries(plan, s, p);
    // First boundary strictly greater than z; skips the duplicate a_l of s=1.
    const auto it = std::upper_bound(bnd.begin() + 1, bnd.end(), z);
    int m = static_cast<int>(it - bnd.begin());
    if (m > plan.M) m = plan.M;  // z == a_u
    return m;
}

// Representative value of cell m in scheme s (the cell midpoint by default).
inline double cell_representative(const ShiftingPlan& plan, int s, int m, int p = 0) {
    const auto bnd = split_boundaries(plan, s, p);
    switch (plan.representative) {
        case Representative::left_edge:
            return bnd[m - 1];
        case Representative::midpoint:
        case Representative::custom:
        default:
            return (bnd[m - 1] + bnd[m]) / 2;
    }
}

inline DiscretizedRecord discretize_value(const std::vector<double>& z,
                                          const ShiftingPlan& plan, int s,
                                          std::int64_t id = 0) {
    if (static_cast<int>(z.size()) != plan.P())
        throw data_error("value dimension does not match plan");
    DiscretizedRecord rec;
    rec.id = id;
    rec.s = s;
    rec.m.resize(plan.P());
    rec.v.resize(plan.P());
    for (int p = 0; p < plan.P(); ++p) {
        rec.m[p] = cell_index(plan, s, z[p], p);
        rec.v[p] = cell_representative(plan, s, rec.m[p], p);
    }
    return rec;
}

// Row-wise discretization of an N x P matrix of sensitive values.
inline DiscretizedDataset discretize_dataset(const std::vector<std::vector<double>>& values,
                                             const ShiftingPlan& plan, std::uint64_t seed) {
    DiscretizedDataset ds;
    ds.plan = plan;
    const std::size_t n = values.size();
    const auto splits = assign_splits(n, plan.S, seed);
    ds.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        ds.records.push_back(
            discretize_value(values[i], plan, splits[i], static_cast<std::int64_t>(i)));
    ds.truncated_flags.assign(n, false);
    return ds;
}

// Convenience for univariate data.
inline DiscretizedDataset discretize_dataset(const std::vector<double>& values,
                                             const ShiftingPlan& plan, std::uint64_t seed) {
    std::vector<std::vector<double>> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = {values[i]};
    return discretize_dataset(rows, plan, seed);
}

// Drops records falling in a boundary cell (m = 1 or m = M) in any sensitive
// dimension; intended for data whose true support had to be clipped.
inline DiscretizedDataset truncate_unbounded(const DiscretizedDataset& ds) {
    DiscretizedDataset out;
    out.plan = ds.plan;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& rec = ds.records[i];
        const bool boundary = std::any_of(rec.m.begin(), rec.m.end(), [&](int m) {
            return m == 1 || m == ds.plan.M;
        });
        if (boundary) {
            ++out.dropped;
        } else {
            kept.push_back(i);
            out.records.push_back(rec);
        }
    }
    out.truncated_flags.assign(out.records.size(), true);
    for (const auto& [name, col] : ds.covariates) {
        std::vector<double> filtered;
        filtered.reserve(kept.size());
        for (std::size_t i : kept) filtered.push_back(col[i]);
        out.covariates[name] = std::move(filtered);
    }
    return out;
}

}  // namespace splitsamp
