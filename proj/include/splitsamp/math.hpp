#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "splitsamp/errors.hpp"

namespace splitsamp {

// Standard normal CDF.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

// Standard normal quantile: Acklam's rational approximation refined with one
// Halley step against erfc, accurate to ~1e-15 over (0, 1).
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw invalid_argument_error("norm_quantile requires p in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    // Halley refinement.
    const double e = 0.5 * std::erfc(-x * M_SQRT1_2) - p;
    const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
    x -= u / (1 + x * u / 2);
    return x;
}

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double fa,
                      double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double fa, double b, double fb, double m, double fm,
                               double whole, double tol, int depth) {
    const double lm = (a + m) / 2, rm = (m + b) / 2;
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (b <= a) return 0.0;
    const double m = (a + b) / 2;
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return detail::adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

}  // namespace splitsamp
