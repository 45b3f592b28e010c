#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "globeprobe/csv.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/metrics.hpp"

namespace globeprobe {

/// Regression specifications: A uses the competitiveness index plus the ten
/// language indicators; B adds linguistic fractionalization and logged
/// population; C swaps the index and population for internet usage and
/// logged GDP.
enum class ModelSpec { A, B, C };

inline ModelSpec parse_model_spec(std::string_view s) {
    if (s == "A" || s == "a") return ModelSpec::A;
    if (s == "B" || s == "b") return ModelSpec::B;
    if (s == "C" || s == "c") return ModelSpec::C;
    throw ConfigError("unknown model spec '" + std::string(s) + "' (A, B or C)");
}

inline const char* model_spec_name(ModelSpec m) {
    switch (m) {
        case ModelSpec::A: return "A";
        case ModelSpec::B: return "B";
        case ModelSpec::C: return "C";
    }
    return "?";
}

inline const std::vector<std::pair<std::string, std::string>>& language_columns() {
    // csv column -> display label, in the fixed panel order
    static const std::vector<std::pair<std::string, std::string>> cols{
        {"english", "English"},   {"german", "German"},     {"spanish", "Spanish"},
        {"russian", "Russian"},   {"portuguese", "Portuguese"}, {"french", "French"},
        {"dutch", "Dutch"},       {"italian", "Italian"},   {"chinese", "Chinese"},
        {"arabic", "Arabic"},
    };
    return cols;
}

struct RegressionDataset {
    ModelSpec spec = ModelSpec::A;
    DistanceMetric metric = DistanceMetric::Euclidean;
    std::vector<std::string> row_names;  // kept societies, display names
    std::vector<double> y;
    std::vector<std::string> predictor_names;
    std::vector<std::vector<double>> predictors;  // one column per predictor
    std::vector<std::string> dropped;             // societies lost to missing values

    size_t n() const { return y.size(); }
    size_t k() const { return predictors.size(); }
};

namespace detail {

struct ColumnSpec {
    std::string csv_name;
    std::string display_name;
    bool is_dummy = false;
    bool log_transform = false;
};

inline std::vector<ColumnSpec> columns_for(ModelSpec spec) {
    std::vector<ColumnSpec> cols;
    if (spec == ModelSpec::A || spec == ModelSpec::B)
        cols.push_back({"gci", "Global Comp. Index", false, false});
    for (const auto& [csv, label] : language_columns()) cols.push_back({csv, label, true, false});
    if (spec == ModelSpec::B || spec == ModelSpec::C)
        cols.push_back({"linguistic_fractionalization", "Linguistic fractionalization",
                        false, false});
    if (spec == ModelSpec::B) cols.push_back({"population", "Population size (logged)", false, true});
    if (spec == ModelSpec::C) {
        cols.push_back({"internet_usage", "Internet usage", false, false});
        cols.push_back({"gdp", "GDP (logged)", false, true});
    }
    return cols;
}

}  // namespace detail

/// Pearson correlations across the dataset columns (outcome first, then the
/// predictors). Cells are NaN when a column has no variance.
inline std::vector<std::vector<double>> correlation_matrix(const RegressionDataset& ds) {
    std::vector<const std::vector<double>*> cols{&ds.y};
    for (const auto& p : ds.predictors) cols.push_back(&p);
    const size_t m = cols.size();
    const size_t n = ds.n();

    auto mean_of = [n](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return n > 0 ? s / static_cast<double>(n) : 0.0;
    };
    std::vector<double> means(m), sds(m);
    for (size_t j = 0; j < m; ++j) {
        means[j] = mean_of(*cols[j]);
        double ss = 0.0;
        for (double x : *cols[j]) ss += (x - means[j]) * (x - means[j]);
        sds[j] = std::sqrt(ss);
    }
    std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = 0; b < m; ++b) {
            if (sds[a] == 0.0 || sds[b] == 0.0) {
                r[a][b] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            double cov = 0.0;
            for (size_t i = 0; i < n; ++i)
                cov += ((*cols[a])[i] - means[a]) * ((*cols[b])[i] - means[b]);
            r[a][b] = cov / (sds[a] * sds[b]);
        }
    }
    return r;
}

/// Join the distance rows with the country-indicator table on
/// (society_name, qualifier), keep the columns the model needs, drop rows
/// with missing values and record them. Indicator rows naming societies
/// outside the reference set are a join error.
inline RegressionDataset assemble_dataset(const std::vector<DistanceRow>& distances,
                                          const DsvTable& indicators, ModelSpec spec,
                                          DistanceMetric metric) {
    const auto cols = detail::columns_for(spec);
    const size_t c_name = indicators.col("society_name");
    const size_t c_qual = indicators.col("qualifier");
    for (const auto& c : cols)
        if (!indicators.has_col(c.csv_name))
            throw SchemaError("indicators file lacks column '" + c.csv_name +
                              "' required by model " + model_spec_name(spec));

    std::map<std::pair<std::string, std::string>, const std::vector<std::string>*> by_society;
    std::vector<std::string> unknown;
    for (const auto& row : indicators.rows) {
        const auto key = std::make_pair(row[c_name], row[c_qual]);
        bool known = false;
        for (const auto& d : distances)
            if (d.society_name == key.first && d.qualifier == key.second) {
                known = true;
                break;
            }
        if (!known) {
            unknown.push_back(key.second.empty() ? key.first
                                                 : key.first + " (" + key.second + ")");
            continue;
        }
        by_society[key] = &row;
    }
    if (!unknown.empty()) {
        std::string msg = "indicators name societies outside the reference set:";
        for (const auto& u : unknown) msg += " " + u + ";";
        throw JoinError(msg);
    }

    RegressionDataset ds;
    ds.spec = spec;
    ds.metric = metric;
    for (const auto& c : cols) ds.predictor_names.push_back(c.display_name);
    ds.predictors.resize(cols.size());

    for (const auto& d : distances) {
        const auto it = by_society.find(std::make_pair(d.society_name, d.qualifier));
        std::vector<double> values;
        bool complete = it != by_society.end();
        if (complete) {
            const auto& row = *it->second;
            for (const auto& c : cols) {
                const std::string& cell = row[indicators.col(c.csv_name)];
                if (cell.empty()) {
                    complete = false;
                    break;
                }
                double v = parse_double(cell, c.csv_name + " for " + d.display_name());
                if (c.is_dummy && v != 0.0 && v != 1.0)
                    throw DataError("indicator '" + c.csv_name + "' for " + d.display_name() +
                                    " must be 0 or 1");
                if (c.log_transform) {
                    if (v <= 0.0)
                        throw DataError("indicator '" + c.csv_name + "' for " +
                                        d.display_name() + " must be positive for the log");
                    v = std::log(v);
                }
                values.push_back(v);
            }
        }
        if (!complete) {
            ds.dropped.push_back(d.display_name());
            continue;
        }
        ds.row_names.push_back(d.display_name());
        ds.y.push_back(metric == DistanceMetric::Euclidean ? d.euclidean : d.cosine);
        for (size_t j = 0; j < values.size(); ++j) ds.predictors[j].push_back(values[j]);
    }
    return ds;
}

}  // namespace globeprobe
