#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "globeprobe/errors.hpp"
#include "globeprobe/tdist.hpp"

namespace globeprobe {

struct PredictorStats {
    std::string name;
    double coeff = 0.0;
    double std_error = 0.0;
    double std_coeff = 0.0;  // coeff * sd(x) / sd(y)
    double t = 0.0;
    double p = 1.0;
    double vif = 1.0;
    bool vif_singular = false;  // perfectly collinear with the other predictors
    double f2 = 0.0;            // Cohen's f^2 from dropping this predictor
};

struct RegressionResult {
    double intercept = 0.0;
    double intercept_se = 0.0;
    double intercept_t = 0.0;
    double intercept_p = 1.0;
    std::vector<PredictorStats> predictors;
    double r_squared = 0.0;
    double residual_se = 0.0;
    int n = 0;
    int k = 0;
    int df_residual = 0;
};

/// Cohen's f^2 for a nested-model comparison.
inline double cohen_f2(double r2_full, double r2_reduced) {
    if (r2_full >= 1.0) throw DomainError("cohen_f2: r2_full must be < 1");
    if (r2_reduced < -1e-12 || r2_reduced > r2_full + 1e-12)
        throw DomainError("cohen_f2: need 0 <= r2_reduced <= r2_full");
    return (r2_full - r2_reduced) / (1.0 - r2_full);
}

namespace detail {

// Least squares via Householder QR on the design matrix (intercept column
// prepended). Returns coefficients, RSS and the inverse of X'X.
struct QrFit {
    std::vector<double> beta;      // m = k+1 entries, intercept first
    std::vector<double> xtx_inv;   // m*m, row-major
    double rss = 0.0;
};

inline QrFit qr_least_squares(const std::vector<std::vector<double>>& predictors,
                              const std::vector<double>& y,
                              const std::vector<std::string>* names) {
    const size_t n = y.size();
    const size_t k = predictors.size();
    const size_t m = k + 1;
    if (n <= m) throw DataError("ols: need n > k + 1 observations");
    for (const auto& col : predictors)
        if (col.size() != n) throw DataError("ols: predictor column length mismatch");

    // column-major design matrix
    std::vector<double> a(n * m);
    for (size_t i = 0; i < n; ++i) a[i] = 1.0;
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < n; ++i) a[(j + 1) * n + i] = predictors[j][i];

    std::vector<double> col_norm(m);
    for (size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += a[j * n + i] * a[j * n + i];
        col_norm[j] = std::sqrt(s);
    }

    std::vector<double> qty(y);

    // Householder reflections, applied in place
    for (size_t j = 0; j < m; ++j) {
        double norm = 0.0;
        for (size_t i = j; i < n; ++i) norm += a[j * n + i] * a[j * n + i];
        norm = std::sqrt(norm);
        const double tol = 1e-12 * (col_norm[j] > 0.0 ? col_norm[j] : 1.0);
        if (norm <= tol) {
            std::string msg = "ols: singular design matrix";
            if (names && j > 0 && j - 1 < names->size())
                msg += "; column '" + (*names)[j - 1] + "' is linearly dependent on the others";
            else if (j == 0)
                msg += "; intercept column degenerate";
            throw SingularDesignError(msg);
        }
        double alpha = a[j * n + j] > 0.0 ? -norm : norm;
        std::vector<double> v(n - j);
        v[0] = a[j * n + j] - alpha;
        for (size_t i = j + 1; i < n; ++i) v[i - j] = a[j * n + i];
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;
        a[j * n + j] = alpha;
        for (size_t i = j + 1; i < n; ++i) a[j * n + i] = 0.0;
        if (vnorm2 <= 0.0) continue;
        for (size_t c = j + 1; c < m; ++c) {
            double dot = 0.0;
            for (size_t i = j; i < n; ++i) dot += v[i - j] * a[c * n + i];
            const double f = 2.0 * dot / vnorm2;
            for (size_t i = j; i < n; ++i) a[c * n + i] -= f * v[i - j];
        }
        double dot = 0.0;
        for (size_t i = j; i < n; ++i) dot += v[i - j] * qty[i];
        const double f = 2.0 * dot / vnorm2;
        for (size_t i = j; i < n; ++i) qty[i] -= f * v[i - j];
    }

    // back substitution: R beta = (Q'y)[0..m)
    QrFit fit;
    fit.beta.assign(m, 0.0);
    for (size_t jj = m; jj-- > 0;) {
        double s = qty[jj];
        for (size_t c = jj + 1; c < m; ++c) s -= a[c * n + jj] * fit.beta[c];
        const double r_jj = a[jj * n + jj];
        if (std::fabs(r_jj) < 1e-12 * (col_norm[jj] > 0.0 ? col_norm[jj] : 1.0)) {
            std::string msg = "ols: singular design matrix";
            if (names && jj > 0 && jj - 1 < names->size())
                msg += "; column '" + (*names)[jj - 1] + "' is linearly dependent on the others";
            throw SingularDesignError(msg);
        }
        fit.beta[jj] = s / r_jj;
    }

    for (size_t i = m; i < n; ++i) fit.rss += qty[i] * qty[i];

    // (X'X)^-1 = R^-1 R^-T; W = R^-1 via back substitution on columns of I
    std::vector<double> w(m * m, 0.0);  // row-major upper triangular
    for (size_t col = 0; col < m; ++col) {
        for (size_t row = col + 1; row-- > 0;) {
            double s = (row == col) ? 1.0 : 0.0;
            for (size_t c = row + 1; c <= col; ++c) s -= a[c * n + row] * w[c * m + col];
            w[row * m + col] = s / a[row * n + row];
        }
    }
    fit.xtx_inv.assign(m * m, 0.0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (size_t c = std::max(i, j); c < m; ++c) s += w[i * m + c] * w[j * m + c];
            fit.xtx_inv[i * m + j] = s;
        }
    return fit;
}

inline double sample_sd(const std::vector<double>& v) {
    const size_t n = v.size();
    if (n < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

inline double r_squared_of(const std::vector<std::vector<double>>& predictors,
                           const std::vector<double>& y) {
    const QrFit fit = qr_least_squares(predictors, y, nullptr);
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double tss = 0.0;
    for (double v : y) tss += (v - mean) * (v - mean);
    if (tss <= 0.0) return fit.rss <= 1e-24 ? 1.0 : 0.0;
    double r2 = 1.0 - fit.rss / tss;
    if (r2 < 0.0) r2 = 0.0;
    if (r2 > 1.0) r2 = 1.0;
    return r2;
}

}  // namespace detail

/// Variance inflation factor of predictor j: 1 / (1 - R^2 of regressing it
/// on every other predictor). Returns +inf with no complaint for a perfectly
/// collinear column; the caller flags it.
inline double vif(const std::vector<std::vector<double>>& predictors, size_t j) {
    if (j >= predictors.size()) throw DomainError("vif: predictor index out of range");
    if (predictors.size() == 1) return 1.0;
    std::vector<std::vector<double>> others;
    for (size_t c = 0; c < predictors.size(); ++c)
        if (c != j) others.push_back(predictors[c]);
    double r2;
    try {
        r2 = detail::r_squared_of(others, predictors[j]);
    } catch (const SingularDesignError&) {
        return std::numeric_limits<double>::infinity();
    }
    if (r2 >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
    return 1.0 / (1.0 - r2);
}

/// Ordinary least squares with the full diagnostic set: standard errors,
/// standardized coefficients, t and two-sided p, VIF and per-predictor
/// Cohen's f^2, plus model-level R^2.
inline RegressionResult ols(const std::vector<std::vector<double>>& predictors,
                            const std::vector<double>& y,
                            const std::vector<std::string>& names) {
    if (names.size() != predictors.size())
        throw DataError("ols: one name required per predictor column");
    const size_t n = y.size();
    const size_t k = predictors.size();
    const size_t m = k + 1;

    const detail::QrFit fit = detail::qr_least_squares(predictors, y, &names);

    RegressionResult res;
    res.n = static_cast<int>(n);
    res.k = static_cast<int>(k);
    res.df_residual = static_cast<int>(n - m);
    const double sigma2 = fit.rss / static_cast<double>(res.df_residual);
    res.residual_se = std::sqrt(sigma2);

    double ymean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double tss = 0.0;
    for (double v : y) tss += (v - ymean) * (v - ymean);
    res.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : (fit.rss <= 1e-24 ? 1.0 : 0.0);
    if (res.r_squared < 0.0) res.r_squared = 0.0;

    const double sd_y = detail::sample_sd(y);

    auto t_and_p = [&](double coeff, double se, double& t, double& p) {
        if (se > 0.0) {
            t = coeff / se;
            p = t_pvalue(t, res.df_residual);
        } else {
            t = coeff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity() * (coeff > 0 ? 1 : -1);
            p = coeff == 0.0 ? 1.0 : 0.0;
        }
    };

    res.intercept = fit.beta[0];
    res.intercept_se = std::sqrt(sigma2 * fit.xtx_inv[0]);
    t_and_p(res.intercept, res.intercept_se, res.intercept_t, res.intercept_p);

    res.predictors.resize(k);
    for (size_t j = 0; j < k; ++j) {
        PredictorStats& ps = res.predictors[j];
        ps.name = names[j];
        ps.coeff = fit.beta[j + 1];
        ps.std_error = std::sqrt(sigma2 * fit.xtx_inv[(j + 1) * m + (j + 1)]);
        ps.std_coeff = sd_y > 0.0 ? ps.coeff * detail::sample_sd(predictors[j]) / sd_y : 0.0;
        t_and_p(ps.coeff, ps.std_error, ps.t, ps.p);

        ps.vif = vif(predictors, j);
        ps.vif_singular = std::isinf(ps.vif);

        if (k == 1) {
            ps.f2 = res.r_squared < 1.0 ? res.r_squared / (1.0 - res.r_squared)
                                        : std::numeric_limits<double>::infinity();
        } else {
            std::vector<std::vector<double>> reduced;
            std::vector<std::string> rnames;
            for (size_t c = 0; c < k; ++c)
                if (c != j) reduced.push_back(predictors[c]);
            const double r2_reduced = detail::r_squared_of(reduced, y);
            ps.f2 = res.r_squared < 1.0
                        ? (res.r_squared - std::min(r2_reduced, res.r_squared)) /
                              (1.0 - res.r_squared)
                        : std::numeric_limits<double>::infinity();
        }
    }
    return res;
}

}  // namespace globeprobe
