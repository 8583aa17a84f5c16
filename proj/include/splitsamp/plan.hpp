#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "splitsamp/errors.hpp"

namespace splitsamp {

// --- Split-sample plan geometry -------------------------------------------
//
// A plan defines S interval schemes over a bounded support.  Scheme s uses
// M cells: the interior boundaries of an equal-width grid with cell width
// w = (a_u - a_l)/(M-1), shifted upward by (s-1)*h where h = w/S.  The first
// cell of scheme s is a stub of width (s-1)*h (empty for s=1) and the last
// cell has width w - (s-1)*h.  The union of all boundaries is a uniform
// "working grid" of B = S*(M-1) cells of width h.
//
// M = 1 is accepted as an explicit degenerate plan: a single cell covering
// the whole support, which reveals nothing about a value's position.

struct SupportBox {
    // Per-dimension [lower, upper] bounds.
    std::vector<std::pair<double, double>> dims;

    int P() const { return static_cast<int>(dims.size()); }
    double lower(int p) const { return dims.at(p).first; }
    double upper(int p) const { return dims.at(p).second; }
    double width(int p) const { return dims.at(p).second - dims.at(p).first; }

    static SupportBox box1d(double lo, double hi) { return SupportBox{{{lo, hi}}}; }
};

enum class Representative { midpoint, left_edge, custom };

struct ShiftingPlan {
    int S = 1;
    int M = 2;
    SupportBox support;
    std::vector<double> h;  // shift size per dimension
    Representative representative = Representative::midpoint;
    std::vector<std::vector<double>> custom_representatives;  // per dim, size B

    int P() const { return support.P(); }
    // Working-grid cell count per dimension.
    int B() const { return M == 1 ? 1 : S * (M - 1); }
    // Full interval width per dimension.
    double cell_width(int p) const {
        return M == 1 ? support.width(p) : support.width(p) / (M - 1);
    }
};

inline ShiftingPlan build_shifting_plan(int S, int M, const SupportBox& support,
                                        Representative rep = Representative::midpoint) {
    if (S < 1) throw invalid_argument_error("S must be >= 1");
    if (M < 1) throw invalid_argument_error("M must be >= 1");
    if (support.P() < 1) throw invalid_argument_error("support must have >= 1 dimension");
    for (int p = 0; p < support.P(); ++p) {
        const double lo = support.lower(p), hi = support.upper(p);
        if (!(std::isfinite(lo) && std::isfinite(hi)))
            throw invalid_argument_error("support bounds must be finite");
        if (!(lo < hi)) throw invalid_argument_error("support must satisfy a_l < a_u");
    }
    ShiftingPlan plan;
    plan.S = S;
    plan.M = M;
    plan.support = support;
    plan.representative = rep;
    plan.h.resize(support.P());
    for (int p = 0; p < support.P(); ++p)
        plan.h[p] = M == 1 ? support.width(p) : support.width(p) / (S * (M - 1));
    return plan;
}

// Boundaries of scheme s in dimension p: c_0 = a_l, c_m = a_l + (s-1)h + (m-1)w
// for 0 < m < M, c_M = a_u.  Length M+1; for s = 1 the first cell is empty.
inline std::vector<double> split_boundaries(const ShiftingPlan& plan, int s, int p = 0) {
    if (s < 1 || s > plan.S) throw invalid_argument_error("split index s out of range");
    if (p < 0 || p >= plan.P()) throw invalid_argument_error("dimension out of range");
    const double al = plan.support.lower(p), au = plan.support.upper(p);
    const double w = plan.cell_width(p);
    std::vector<double> b;
    b.reserve(plan.M + 1);
    b.push_back(al);
    for (int m = 1; m < plan.M; ++m) b.push_back(al + (s - 1) * plan.h[p] + (m - 1) * w);
    b.push_back(au);
    return b;
}

struct WorkingGrid {
    // Per-dimension boundaries (size B+1) and cell representatives (size B).
    std::vector<std::vector<double>> boundaries;
    std::vector<std::vector<double>> representatives;

    int B(int p = 0) const { return static_cast<int>(representatives.at(p).size()); }
};

inline WorkingGrid working_grid(const ShiftingPlan& plan) {
    WorkingGrid grid;
    grid.boundaries.resize(plan.P());
    grid.representatives.resize(plan.P());
    for (int p = 0; p < plan.P(); ++p) {
        const double al = plan.support.lower(p);
        const int B = plan.B();
        auto& bd = grid.boundaries[p];
        bd.resize(B + 1);
        for (int b = 0; b <= B; ++b) bd[b] = al + b * plan.h[p];
        bd[B] = plan.support.upper(p);
        auto& rep = grid.representatives[p];
        rep.resize(B);
        switch (plan.representative) {
            case Representative::midpoint:
                for (int b = 0; b < B; ++b) rep[b] = (bd[b] + bd[b + 1]) / 2;
                break;
            case Representative::left_edge:
                for (int b = 0; b < B; ++b) rep[b] = bd[b];
                break;
            case Representative::custom:
                if (static_cast<int>(plan.custom_representatives.size()) <= p ||
                    static_cast<int>(plan.custom_representatives[p].size()) != B)
                    throw invalid_argument_error(
                        "custom representatives must provide B values per dimension");
                rep = plan.custom_representatives[p];
                break;
        }
    }
    return grid;
}

// Working cells (1-based indices) covered by cell m of scheme s, computed by
// geometric intersection of [c_{m-1}, c_m) with the uniform working grid.
// Counts obey the closed forms: m=1 -> s-1 cells, interior -> S, m=M -> S-s+1.
inline std::vector<int> covered_working_cells(const ShiftingPlan& plan, int s, int m,
                                              int p = 0) {
    if (m < 1 || m > plan.M) throw invalid_argument_error("cell index m out of range");
    if (plan.M == 1) return {1};
    const auto bnd = split_boundaries(plan, s, p);
    const double lo = bnd[m - 1], hi = bnd[m];
    if (hi <= lo) return {};
    const double al = plan.support.lower(p);
    const int lo_i = static_cast<int>(std::lround((lo - al) / plan.h[p]));
    const int hi_i = static_cast<int>(std::lround((hi - al) / plan.h[p]));
    std::vector<int> cells;
    cells.reserve(hi_i - lo_i);
    for (int b = lo_i + 1; b <= hi_i; ++b) cells.push_back(b);
    return cells;
}

// --- General scheme sets ---------------------------------------------------
//
// A SchemeSet is the general split-sampling object: any number of interval
// schemes over a common support, each given by its full boundary sequence.
// The shifting method is the special case produced by from_plan.  The general
// form is needed for hand-built designs whose schemes are not shifts of a
// common grid; its working grid is the deduplicated union of all boundaries
// (not necessarily uniform).

struct SchemeSet {
    std::vector<std::vector<double>> schemes;  // each sorted, first = a_l, last = a_u

    static SchemeSet from_plan(const ShiftingPlan& plan, int p = 0) {
        SchemeSet set;
        set.schemes.reserve(plan.S);
        for (int s = 1; s <= plan.S; ++s) set.schemes.push_back(split_boundaries(plan, s, p));
        return set;
    }

    std::vector<double> working_boundaries() const {
        std::vector<double> all;
        for (const auto& sch : schemes) all.insert(all.end(), sch.begin(), sch.end());
        std::sort(all.begin(), all.end());
        std::vector<double> out;
        for (double v : all)
            if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
        return out;
    }
};

}  // namespace splitsamp
