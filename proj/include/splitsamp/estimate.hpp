#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitsamp/errors.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/reconstruct.hpp"

namespace splitsamp {

// --- Partition of the non-discretized regressor domain --------------------

struct PartitionPlan {
    std::vector<double> edges;  // sorted, length L+1

    int L() const { return static_cast<int>(edges.size()) - 1; }

    // 1-based partition index, clipped to [1, L].
    int bin(double x) const {
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        int l = static_cast<int>(it - edges.begin());
        return std::clamp(l, 1, L());
    }

    static PartitionPlan equal_width(double lo, double hi, int L) {
        if (L < 1 || !(lo < hi))
            throw invalid_argument_error("partition requires L >= 1 and lo < hi");
        PartitionPlan p;
        p.edges.resize(L + 1);
        for (int i = 0; i <= L; ++i) p.edges[i] = lo + (hi - lo) * i / L;
        return p;
    }
};

// --- Conditional-expectation tables ---------------------------------------

struct CondExpTable {
    // Key: (s, m) or (s, m, l).  Value: running sum and count; mean on read.
    std::map<std::vector<int>, std::pair<double, long>> cells;

    void add(const std::vector<int>& key, double value) {
        auto& c = cells[key];
        c.first += value;
        ++c.second;
    }
    bool has(const std::vector<int>& key) const { return cells.count(key) > 0; }
    double mean(const std::vector<int>& key) const {
        const auto it = cells.find(key);
        if (it == cells.end())
            throw data_error("conditional-expectation table: empty cell requested");
        return it->second.first / it->second.second;
    }
    long count(const std::vector<int>& key) const {
        const auto it = cells.find(key);
        return it == cells.end() ? 0 : it->second.second;
    }
};

// --- OLS core --------------------------------------------------------------

struct RegressionResult {
    Eigen::VectorXd beta;        // coefficients on the X block
    Eigen::VectorXd gamma;       // coefficients on the W block (controls)
    Eigen::VectorXd se;          // standard errors, X block then W block
    Eigen::MatrixXd cov;         // full covariance of (beta, gamma)
    double sigma2 = 0.0;         // residual variance, SSR / (N - k)
    std::size_t n = 0;
    std::string case_tag;
    long empty_cells = 0;        // diagnostics
};

// OLS of y on [X W] via column-pivoted QR.  The covariance is
// sigma2 * ([X W]'[X W])^-1, whose X block equals sigma2 * (X' M_W X)^-1.
inline RegressionResult ols_core(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                 const Eigen::MatrixXd& W = Eigen::MatrixXd()) {
    const auto n = y.size();
    const auto kx = X.cols();
    const auto kw = W.size() == 0 ? 0 : W.cols();
    if (X.rows() != n || (kw > 0 && W.rows() != n))
        throw invalid_argument_error("ols_core: row mismatch");
    const auto k = kx + kw;
    if (n <= k) throw invalid_argument_error("ols_core: need more rows than columns");
    Eigen::MatrixXd A(n, k);
    A.leftCols(kx) = X;
    if (kw > 0) A.rightCols(kw) = W;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        std::string cols;
        const auto perm = qr.colsPermutation().indices();
        for (auto j = qr.rank(); j < k; ++j)
            cols += (cols.empty() ? "" : ", ") + std::to_string(perm[j]);
        throw numerical_error("rank-deficient design matrix; dependent column(s): " + cols);
    }
    const Eigen::VectorXd coef = qr.solve(y);
    const Eigen::VectorXd resid = y - A * coef;
    const double ssr = resid.squaredNorm();

    RegressionResult r;
    r.n = static_cast<std::size_t>(n);
    r.sigma2 = ssr / static_cast<double>(n - k);
    const Eigen::MatrixXd xtx_inv =
        (A.transpose() * A).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    r.cov = r.sigma2 * xtx_inv;
    r.beta = coef.head(kx);
    r.gamma = coef.tail(kw);
    r.se = r.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return r;
}

namespace detail {

inline Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& W, Eigen::Index n,
                                      bool add_intercept) {
    const auto kw = W.size() == 0 ? 0 : W.cols();
    Eigen::MatrixXd out(n, (add_intercept ? 1 : 0) + kw);
    Eigen::Index c = 0;
    if (add_intercept) out.col(c++) = Eigen::VectorXd::Ones(n);
    for (Eigen::Index j = 0; j < kw; ++j) out.col(c++) = W.col(j);
    return out;
}

// Per-group means of a column, group = key per record.
inline std::vector<double> group_means(const std::vector<std::vector<int>>& keys,
                                       const Eigen::VectorXd& col) {
    CondExpTable t;
    for (Eigen::Index i = 0; i < col.size(); ++i) t.add(keys[i], col[i]);
    std::vector<double> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) out[i] = t.mean(keys[i]);
    return out;
}

}  // namespace detail

// --- Conditional-mean tables (kappa and pi) --------------------------------

// kappa(s, m) = mean of the synthetic values falling in cell m of scheme s.
// Every record contributes to one cell of every scheme: classification is by
// the synthetic value itself, pooled across all schemes.
inline CondExpTable estimate_kappa(const SyntheticSample& synthetic,
                                   const DiscretizedDataset& ds, int p = 0) {
    const ShiftingPlan& plan = ds.plan;
    CondExpTable table;
    const auto& z = synthetic.z.at(p);
    for (int s = 1; s <= plan.S; ++s) {
        const auto bnd = split_boundaries(plan, s, p);
        for (double zi : z) {
            const auto it = std::upper_bound(bnd.begin() + 1, bnd.end(), zi);
            int m = std::min<int>(static_cast<int>(it - bnd.begin()), plan.M);
            table.add({s, m}, zi);
        }
    }
    return table;
}

// pi(s, m, l) = mean synthetic outcome over records whose own discretized
// cell is (s, m) and whose regressor falls in partition l.
inline CondExpTable estimate_pi(const SyntheticSample& synthetic_y,
                                const DiscretizedDataset& ds_y,
                                const Eigen::VectorXd& x,
                                const PartitionPlan& partition, int p = 0) {
    CondExpTable table;
    const auto& z = synthetic_y.z.at(p);
    for (std::size_t i = 0; i < ds_y.records.size(); ++i) {
        const auto& rec = ds_y.records[i];
        table.add({rec.s, rec.m[p], partition.bin(x[static_cast<Eigen::Index>(i)])}, z[i]);
    }
    return table;
}

// --- Case pipelines ---------------------------------------------------------

// Discretized regressor: replace X by kappa(s, m) of the record's own cell and
// y (and controls) by their per-(s, m) cell means, then OLS at observation
// level (equivalent to a count-weighted group regression).
inline RegressionResult estimate_rhs(const Eigen::VectorXd& y,
                                     const DiscretizedDataset& ds_x,
                                     const Eigen::MatrixXd& W, std::uint64_t seed,
                                     bool add_intercept = true) {
    const auto n = y.size();
    if (static_cast<std::size_t>(n) != ds_x.records.size())
        throw invalid_argument_error("estimate_rhs: y length does not match dataset");
    const SyntheticSample synthetic = synthesize(ds_x, seed);
    const CondExpTable kappa = estimate_kappa(synthetic, ds_x);

    std::vector<std::vector<int>> keys(n);
    for (Eigen::Index i = 0; i < n; ++i)
        keys[i] = {ds_x.records[i].s, ds_x.records[i].m[0]};

    Eigen::VectorXd Xdd(n);
    std::vector<std::vector<int>> missing;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!kappa.has(keys[i])) {
            missing.push_back(keys[i]);
            continue;
        }
        Xdd[i] = kappa.mean(keys[i]);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing)
            list += " (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + ")";
        throw data_error("estimate_rhs: empty kappa cell(s):" + list);
    }
    const auto ymeans = detail::group_means(keys, y);
    Eigen::VectorXd Ydd(n);
    for (Eigen::Index i = 0; i < n; ++i) Ydd[i] = ymeans[i];
    Eigen::MatrixXd Wdd = detail::with_intercept(W, n, add_intercept);
    // Controls are replaced by their cell means too (the intercept is its own mean).
    for (Eigen::Index j = add_intercept ? 1 : 0; j < Wdd.cols(); ++j) {
        const auto wm = detail::group_means(keys, Wdd.col(j));
        for (Eigen::Index i = 0; i < n; ++i) Wdd(i, j) = wm[i];
    }
    RegressionResult r = ols_core(Ydd, Xdd, Wdd);
    r.case_tag = "rhs";
    return r;
}

// Discretized outcome: replace y by its conditional expectation given the
// regressor partition (the pi table averaged with empirical cell
// probabilities, which collapses to the per-partition mean of the synthetic
// outcome) and X by its per-partition mean.
inline RegressionResult estimate_lhs(const DiscretizedDataset& ds_y,
                                     const Eigen::VectorXd& x,
                                     const PartitionPlan& partition, std::uint64_t seed,
                                     bool add_intercept = true) {
    const auto n = x.size();
    if (static_cast<std::size_t>(n) != ds_y.records.size())
        throw invalid_argument_error("estimate_lhs: x length does not match dataset");
    const SyntheticSample synthetic = synthesize(ds_y, seed);
    const CondExpTable pi = estimate_pi(synthetic, ds_y, x, partition);

    // Per-partition totals for the empirical class probabilities.
    std::map<int, long> n_l;
    for (Eigen::Index i = 0; i < n; ++i) ++n_l[partition.bin(x[i])];
    for (const auto& [l, cnt] : n_l)
        if (cnt == 0) throw data_error("estimate_lhs: empty partition " + std::to_string(l));

    // ytilde(l) = sum over cells (s, m) of pi(s, m, l) * Pr[(s, m) | l].
    std::map<int, double> ytilde_l;
    for (const auto& [key, cell] : pi.cells) {
        const int l = key[2];
        const double mean = cell.first / cell.second;
        ytilde_l[l] += mean * static_cast<double>(cell.second) / n_l.at(l);
    }
    std::map<int, double> xsum;
    for (Eigen::Index i = 0; i < n; ++i) xsum[partition.bin(x[i])] += x[i];

    Eigen::VectorXd ytilde(n), xtilde(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int l = partition.bin(x[i]);
        ytilde[i] = ytilde_l.at(l);
        xtilde[i] = xsum.at(l) / n_l.at(l);
    }
    RegressionResult r = ols_core(ytilde, xtilde,
                                  detail::with_intercept(Eigen::MatrixXd(), n, add_intercept));
    r.case_tag = "lhs";
    return r;
}

// Both sides discretized: X replaced through its kappa table; the outcome
// replaced by the mean synthetic outcome conditional on the regressor's
// discretized cell (and the W partition when provided).
inline RegressionResult estimate_both(const DiscretizedDataset& ds_y,
                                      const DiscretizedDataset& ds_x,
                                      const Eigen::MatrixXd& W,
                                      const std::optional<PartitionPlan>& partition_w,
                                      std::uint64_t seed, bool add_intercept = true) {
    const std::size_t n = ds_x.records.size();
    if (ds_y.records.size() != n)
        throw invalid_argument_error("estimate_both: datasets have different sizes");
    const SyntheticSample synth_x = synthesize(ds_x, derive_seed(seed, 1));
    const SyntheticSample synth_y = synthesize(ds_y, derive_seed(seed, 2));
    const CondExpTable kappa = estimate_kappa(synth_x, ds_x);

    const auto en = static_cast<Eigen::Index>(n);
    std::vector<std::vector<int>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
        keys[i] = {ds_x.records[i].s, ds_x.records[i].m[0]};
        if (partition_w && W.size() > 0)
            keys[i].push_back(partition_w->bin(W(static_cast<Eigen::Index>(i), 0)));
    }
    Eigen::VectorXd Xdd(en);
    long missing = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<int> kappa_key = {keys[i][0], keys[i][1]};
        if (!kappa.has(kappa_key)) {
            ++missing;
            continue;
        }
        Xdd[static_cast<Eigen::Index>(i)] = kappa.mean(kappa_key);
    }
    if (missing > 0)
        throw data_error("estimate_both: " + std::to_string(missing) +
                         " records in empty kappa cells; consider coarsening the partition");
    Eigen::VectorXd ysynth(en);
    for (std::size_t i = 0; i < n; ++i)
        ysynth[static_cast<Eigen::Index>(i)] = synth_y.z[0][i];
    const auto ymeans = detail::group_means(keys, ysynth);
    Eigen::VectorXd ytilde(en);
    for (Eigen::Index i = 0; i < en; ++i) ytilde[i] = ymeans[i];

    Eigen::MatrixXd Wdd = detail::with_intercept(W, en, add_intercept);
    for (Eigen::Index j = add_intercept ? 1 : 0; j < Wdd.cols(); ++j) {
        const auto wm = detail::group_means(keys, Wdd.col(j));
        for (Eigen::Index i = 0; i < en; ++i) Wdd(i, j) = wm[i];
    }
    RegressionResult r = ols_core(ytilde, Xdd, Wdd);
    r.case_tag = "both";
    return r;
}

// Naive baseline: ordinary OLS on the assigned representative values.
inline RegressionResult midpoint_ols(const Eigen::VectorXd& y, const Eigen::VectorXd& x,
                                     const Eigen::MatrixXd& W = Eigen::MatrixXd(),
                                     bool add_intercept = true) {
    RegressionResult r =
        ols_core(y, x, detail::with_intercept(W, y.size(), add_intercept));
    r.case_tag = "naive";
    return r;
}

}  // namespace splitsamp
