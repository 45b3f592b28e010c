#pragma once

#include <cmath>
#include <string>

#include "globeprobe/errors.hpp"
#include "globeprobe/tdist.hpp"

namespace globeprobe {

/// Sensitivity summary for one tested coefficient (Frank 2000 conventions).
struct SensitivityEntry {
    std::string predictor;
    double coeff = 0.0;
    double std_error = 0.0;
    int n = 0;
    int k = 0;
    bool significant = false;  // at the chosen alpha, before any confounding
    double rir_fraction = 0.0; // share of cases to replace with zero-effect ones
    double r_partial = 0.0;    // |partial correlation| implied by the t statistic
    double r_threshold = 0.0;  // critical correlation at alpha
    double itcv = 0.0;         // impact threshold for a confounding variable
    double k_correlation = 0.0; // sqrt(itcv) when itcv > 0
};

/// Robustness of inference to replacement: the fraction of observations that
/// would have to be replaced with zero-effect cases before the estimate stops
/// being significant at `alpha`. Negative when the estimate is already
/// non-significant.
inline double rir(double coeff, double std_error, int df, double alpha = 0.05) {
    if (!(std_error > 0.0)) throw DomainError("rir: std_error must be positive");
    if (df < 1) throw DomainError("rir: df must be >= 1");
    const double threshold = std_error * t_critical(alpha, df);
    if (coeff == 0.0) return -std::numeric_limits<double>::infinity();
    return 1.0 - threshold / std::fabs(coeff);
}

/// Impact threshold for a confounding variable. The partial correlation is
/// recovered from the t statistic with df = n - k - 1; the critical
/// correlation uses one further degree of freedom (df = n - k - 2) to account
/// for the hypothetical confound entering the model.
inline SensitivityEntry itcv(double coeff, double std_error, int n, int k, double alpha = 0.05) {
    if (!(std_error > 0.0)) throw DomainError("itcv: std_error must be positive");
    const int df = n - k - 1;
    const int df_conf = n - k - 2;
    if (df < 1 || df_conf < 1) throw DomainError("itcv: insufficient degrees of freedom");

    SensitivityEntry e;
    e.coeff = coeff;
    e.std_error = std_error;
    e.n = n;
    e.k = k;

    const double t = coeff / std_error;
    e.r_partial = std::fabs(t) / std::sqrt(t * t + static_cast<double>(df));

    const double tc = t_critical(alpha, df_conf);
    e.r_threshold = tc / std::sqrt(tc * tc + static_cast<double>(df_conf));

    e.significant = std::fabs(t) > t_critical(alpha, df);
    e.itcv = (e.r_partial - e.r_threshold) / (1.0 - e.r_threshold);
    e.k_correlation = e.itcv > 0.0 ? std::sqrt(e.itcv) : 0.0;
    e.rir_fraction = rir(coeff, std_error, df, alpha);
    return e;
}

}  // namespace globeprobe
