#pragma once

#include <cmath>
#include <limits>

#include "globeprobe/errors.hpp"

namespace globeprobe {

namespace detail {

// Continued-fraction expansion of the regularized incomplete beta function
// (modified Lentz method).
inline double ibeta_cf(double a, double b, double x) {
    constexpr int max_iter = 500;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

// log(x) and log(1-x) are supplied separately so callers can avoid the
// cancellation in 1-x when x is very close to 1.
inline double ibeta_impl(double a, double b, double x, double log_x, double log_1mx) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * log_x + b * log_1mx;
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * ibeta_cf(a, b, x) / a;
    return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta: a, b must be positive");
    if (x < 0.0 || x > 1.0) throw DomainError("incomplete_beta: x must lie in [0,1]");
    return detail::ibeta_impl(a, b, x, std::log(x), std::log1p(-x));
}

/// Two-sided tail probability of the central t distribution.
inline double t_pvalue(double t, int df) {
    if (df < 1) throw DomainError("t_pvalue: df must be >= 1");
    if (std::isnan(t)) throw DomainError("t_pvalue: t is NaN");
    if (std::isinf(t)) return 0.0;
    const double t2 = t * t;
    const double dfd = static_cast<double>(df);
    // x = df / (df + t^2); formed via log1p to keep precision for huge df
    const double x = dfd / (dfd + t2);
    const double log_x = -std::log1p(t2 / dfd);
    const double log_1mx = std::log(t2 / (dfd + t2));
    if (t == 0.0) return 1.0;
    return detail::ibeta_impl(dfd / 2.0, 0.5, x, log_x, log_1mx);
}

/// Two-sided critical value: the t >= 0 with t_pvalue(t, df) == alpha.
inline double t_critical(double alpha, int df) {
    if (df < 1) throw DomainError("t_critical: df must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("t_critical: alpha must lie in (0,1)");
    double lo = 0.0, hi = 1.0;
    while (t_pvalue(hi, df) > alpha) {
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_pvalue(mid, df) > alpha)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace globeprobe
