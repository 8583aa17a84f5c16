#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "splitsamp/errors.hpp"
#include "splitsamp/math.hpp"
#include "splitsamp/rng.hpp"

namespace splitsamp {

// A univariate distribution with analytic pdf / cdf / quantile and bounded or
// unbounded support.  Truncation and shifting compose these closed forms, so
// sampling is exact inverse-transform everywhere.
struct Density {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    std::function<double(double)> quantile;  // maps (0,1) onto the support
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

inline double sample(const Density& d, CounterRng& rng) {
    return d.quantile(rng.next_open01());
}

inline Density normal_density(double mu = 0.0, double sigma = 1.0) {
    Density d;
    d.pdf = [=](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-z * z / 2) / (sigma * std::sqrt(2 * M_PI));
    };
    d.cdf = [=](double x) { return norm_cdf((x - mu) / sigma); };
    d.quantile = [=](double u) { return mu + sigma * norm_quantile(u); };
    return d;
}

inline Density logistic_density() {
    Density d;
    d.pdf = [](double x) {
        const double e = std::exp(-std::fabs(x));
        return e / ((1 + e) * (1 + e));
    };
    d.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    d.quantile = [](double u) { return std::log(u / (1 - u)); };
    return d;
}

inline Density lognormal_density(double mu = 0.0, double sigma = 1.0) {
    Density d;
    d.pdf = [=](double x) {
        if (x <= 0) return 0.0;
        const double z = (std::log(x) - mu) / sigma;
        return std::exp(-z * z / 2) / (x * sigma * std::sqrt(2 * M_PI));
    };
    d.cdf = [=](double x) { return x <= 0 ? 0.0 : norm_cdf((std::log(x) - mu) / sigma); };
    d.quantile = [=](double u) { return std::exp(mu + sigma * norm_quantile(u)); };
    d.lo = 0.0;
    return d;
}

inline Density uniform_density(double lo, double hi) {
    Density d;
    d.pdf = [=](double x) { return (x < lo || x > hi) ? 0.0 : 1.0 / (hi - lo); };
    d.cdf = [=](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        return (x - lo) / (hi - lo);
    };
    d.quantile = [=](double u) { return lo + u * (hi - lo); };
    d.lo = lo;
    d.hi = hi;
    return d;
}

inline Density exponential_density(double scale) {
    Density d;
    d.pdf = [=](double x) { return x < 0 ? 0.0 : std::exp(-x / scale) / scale; };
    d.cdf = [=](double x) { return x < 0 ? 0.0 : 1.0 - std::exp(-x / scale); };
    d.quantile = [=](double u) { return -scale * std::log1p(-u); };
    d.lo = 0.0;
    return d;
}

inline Density weibull_density(double shape, double scale) {
    Density d;
    d.pdf = [=](double x) {
        if (x < 0) return 0.0;
        const double z = x / scale;
        return shape / scale * std::pow(z, shape - 1) * std::exp(-std::pow(z, shape));
    };
    d.cdf = [=](double x) { return x < 0 ? 0.0 : 1.0 - std::exp(-std::pow(x / scale, shape)); };
    d.quantile = [=](double u) { return scale * std::pow(-std::log1p(-u), 1.0 / shape); };
    d.lo = 0.0;
    return d;
}

// Restricts a distribution to [lo, hi] and renormalizes.
inline Density truncated(const Density& base, double lo, double hi) {
    const double Flo = base.cdf(lo), Fhi = base.cdf(hi);
    if (!(Fhi > Flo)) throw invalid_argument_error("truncation range has zero mass");
    const double mass = Fhi - Flo;
    Density d;
    d.pdf = [=](double x) { return (x < lo || x > hi) ? 0.0 : base.pdf(x) / mass; };
    d.cdf = [=](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        return (base.cdf(x) - Flo) / mass;
    };
    d.quantile = [=](double u) { return base.quantile(Flo + u * mass); };
    d.lo = lo;
    d.hi = hi;
    return d;
}

// Shifts a distribution by a constant offset.
inline Density shifted(const Density& base, double offset) {
    Density d;
    d.pdf = [=](double x) { return base.pdf(x - offset); };
    d.cdf = [=](double x) { return base.cdf(x - offset); };
    d.quantile = [=](double u) { return base.quantile(u) + offset; };
    d.lo = base.lo + offset;
    d.hi = base.hi + offset;
    return d;
}

// The six benchmark distributions, all with support [-1, 3]:
//   normal      standard normal truncated to [-1, 3]
//   logistic    standard logistic truncated to [-1, 3]
//   lognormal   standard lognormal truncated at 4, minus 1
//   uniform     uniform on [-1, 3]
//   exponential exponential with scale 0.5 truncated at 4, minus 1
//   weibull     Weibull(shape 1.5, scale 1) truncated at 4, minus 1
inline Density make_distribution(const std::string& tag) {
    if (tag == "normal") return truncated(normal_density(), -1.0, 3.0);
    if (tag == "logistic") return truncated(logistic_density(), -1.0, 3.0);
    if (tag == "lognormal") return shifted(truncated(lognormal_density(), 0.0, 4.0), -1.0);
    if (tag == "uniform") return uniform_density(-1.0, 3.0);
    if (tag == "exponential")
        return shifted(truncated(exponential_density(0.5), 0.0, 4.0), -1.0);
    if (tag == "weibull")
        return shifted(truncated(weibull_density(1.5, 1.0), 0.0, 4.0), -1.0);
    throw invalid_argument_error("unknown distribution tag: " + tag);
}

// N(0, 0.25) truncated to [-1, 1]; the benchmark's "other side" variable.
inline Density truncated_normal_half() {
    return truncated(normal_density(0.0, 0.5), -1.0, 1.0);
}

}  // namespace splitsamp
