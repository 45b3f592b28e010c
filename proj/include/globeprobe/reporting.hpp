#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "globeprobe/dimensions.hpp"
#include "globeprobe/indicators.hpp"
#include "globeprobe/metrics.hpp"
#include "globeprobe/ols.hpp"
#include "globeprobe/scoring.hpp"
#include "globeprobe/sensitivity.hpp"
#include "globeprobe/text.hpp"
#include "globeprobe/transcript.hpp"
#include "globeprobe/version.hpp"

namespace globeprobe {

/// Table-3-style p formatting: three decimals, "< .001" below that.
inline std::string format_p(double p) {
    if (p < 0.001) return "< .001";
    return format_fixed(p, 3);
}

inline std::string format_full(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------- profile

/// dimension,abbrev,value rows at full precision (machine readable).
inline std::string profile_csv(const DimensionProfile& profile) {
    std::ostringstream out;
    out << "dimension,abbrev,value\n";
    for (Dimension d : kDimensions)
        out << dimension_name(d) << ',' << dimension_abbrev(d) << ','
            << format_full(profile[d]) << '\n';
    return out.str();
}

inline DimensionProfile load_profile_csv(const std::filesystem::path& path) {
    const DsvTable t = read_csv(path);
    DimensionProfile p;
    std::array<bool, kDimensionCount> seen{};
    for (const auto& row : t.rows) {
        const Dimension d = parse_dimension(row[t.col("abbrev")]);
        p[d] = parse_double(row[t.col("value")], row[t.col("abbrev")]);
        seen[static_cast<size_t>(d)] = true;
    }
    for (size_t i = 0; i < kDimensionCount; ++i)
        if (!seen[i])
            throw DataError(path.string() + ": missing dimension " + kDimensionAbbrev[i]);
    return p;
}

/// Radar-chart data points: label, 3-decimal value per line, ready for any
/// plotting tool.
inline std::string radar_points(const DimensionProfile& profile) {
    std::ostringstream out;
    for (Dimension d : kDimensions)
        out << dimension_name(d) << '\t' << format_fixed(profile[d], 3) << '\n';
    return out.str();
}

/// Self-contained SVG radar chart of one profile on the 1..7 scale.
inline std::string radar_svg(const DimensionProfile& profile, const std::string& title) {
    const double cx = 260.0, cy = 260.0, rmax = 190.0;
    const double pi = 3.14159265358979323846;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"540\" "
           "viewBox=\"0 0 520 540\">\n";
    out << "<text x=\"260\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" << title << "</text>\n";
    for (int ring = 1; ring <= 7; ++ring) {
        const double r = rmax * ring / 7.0;
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << format_fixed(r, 1)
            << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\""
            << (ring == 7 ? "1.5" : "0.5") << "\"/>\n";
    }
    auto point = [&](size_t i, double value) {
        const double angle = 2.0 * pi * static_cast<double>(i) / 9.0 - pi / 2.0;
        const double r = rmax * value / 7.0;
        return std::make_pair(cx + r * std::cos(angle), cy + r * std::sin(angle));
    };
    for (size_t i = 0; i < kDimensionCount; ++i) {
        const auto [x, y] = point(i, 7.0);
        out << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << format_fixed(x, 1)
            << "\" y2=\"" << format_fixed(y, 1) << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
        const auto [lx, ly] = point(i, 7.85);
        out << "<text x=\"" << format_fixed(lx, 1) << "\" y=\"" << format_fixed(ly, 1)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << kDimensionAbbrev[i] << "</text>\n";
    }
    out << "<polygon points=\"";
    for (size_t i = 0; i < kDimensionCount; ++i) {
        const auto [x, y] = point(i, profile.values[i]);
        out << format_fixed(x, 1) << ',' << format_fixed(y, 1) << ' ';
    }
    out << "\" fill=\"#1f77b455\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    out << "</svg>\n";
    return out.str();
}

// ---------------------------------------------------------------- distances

/// Machine-readable distances table (full precision, both metrics).
inline std::string distances_tsv(const std::vector<DistanceRow>& rows) {
    std::ostringstream out;
    out << "society_name\tqualifier\teuclidean\tcosine\n";
    for (const auto& r : rows)
        out << r.society_name << '\t' << r.qualifier << '\t' << format_full(r.euclidean) << '\t'
            << format_full(r.cosine) << '\n';
    return out.str();
}

inline std::vector<DistanceRow> load_distances_tsv(const std::filesystem::path& path) {
    const DsvTable t = read_tsv(path);
    std::vector<DistanceRow> rows;
    for (const auto& row : t.rows) {
        DistanceRow r;
        r.society_name = row[t.col("society_name")];
        r.qualifier = row[t.col("qualifier")];
        r.euclidean = parse_double(row[t.col("euclidean")], "euclidean");
        r.cosine = parse_double(row[t.col("cosine")], "cosine");
        rows.push_back(std::move(r));
    }
    return rows;
}

/// 3-decimal table mirroring the published layout.
inline std::string distances_pretty(const std::vector<DistanceRow>& rows) {
    std::ostringstream out;
    out << "society\teuclidean\tcosine\n";
    for (const auto& r : rows)
        out << r.display_name() << '\t' << format_fixed(r.euclidean, 3) << '\t'
            << format_fixed(r.cosine, 3) << '\n';
    return out.str();
}

// ---------------------------------------------------------------- regression

/// Machine-readable regression export. Header comments carry the model-level
/// facts a sensitivity run needs.
inline std::string regression_tsv(const RegressionResult& res, ModelSpec spec,
                                  DistanceMetric metric) {
    std::ostringstream out;
    out << "# model_spec " << model_spec_name(spec) << '\n';
    out << "# metric " << metric_name(metric) << '\n';
    out << "# n " << res.n << '\n';
    out << "# k " << res.k << '\n';
    out << "# df_residual " << res.df_residual << '\n';
    out << "# r_squared " << format_full(res.r_squared) << '\n';
    out << "# residual_se " << format_full(res.residual_se) << '\n';
    out << "predictor\tcoeff\tstd_error\tstd_coeff\tt\tp\tvif\tf2\n";
    out << "(Intercept)\t" << format_full(res.intercept) << '\t' << format_full(res.intercept_se)
        << "\t\t" << format_full(res.intercept_t) << '\t' << format_full(res.intercept_p)
        << "\t\t\n";
    for (const auto& p : res.predictors) {
        out << p.name << '\t' << format_full(p.coeff) << '\t' << format_full(p.std_error) << '\t'
            << format_full(p.std_coeff) << '\t' << format_full(p.t) << '\t' << format_full(p.p)
            << '\t' << (p.vif_singular ? "inf" : format_full(p.vif)) << '\t'
            << format_full(p.f2) << '\n';
    }
    return out.str();
}

struct RegressionFileData {
    RegressionResult result;
    ModelSpec spec = ModelSpec::A;
    DistanceMetric metric = DistanceMetric::Euclidean;
};

inline RegressionFileData load_regression_tsv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open regression file: " + path.string());
    RegressionFileData out;
    RegressionResult& res = out.result;
    std::string line;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            ss >> key;
            if (key == "model_spec") {
                std::string v;
                ss >> v;
                out.spec = parse_model_spec(v);
            } else if (key == "metric") {
                std::string v;
                ss >> v;
                out.metric = parse_metric(v);
            } else if (key == "n")
                ss >> res.n;
            else if (key == "k")
                ss >> res.k;
            else if (key == "df_residual")
                ss >> res.df_residual;
            else if (key == "r_squared")
                ss >> res.r_squared;
            else if (key == "residual_se")
                ss >> res.residual_se;
            continue;
        }
        const auto fields = split(line, '\t');
        if (!header_seen) {
            if (fields.empty() || fields[0] != "predictor")
                throw DataError(path.string() + ": unexpected regression table header");
            header_seen = true;
            continue;
        }
        if (fields.size() != 8) throw DataError(path.string() + ": malformed regression row");
        if (fields[0] == "(Intercept)") {
            res.intercept = parse_double(fields[1], "intercept");
            res.intercept_se = parse_double(fields[2], "intercept se");
            res.intercept_t = parse_double(fields[4], "intercept t");
            res.intercept_p = parse_double(fields[5], "intercept p");
            continue;
        }
        PredictorStats p;
        p.name = fields[0];
        p.coeff = parse_double(fields[1], "coeff");
        p.std_error = parse_double(fields[2], "std_error");
        p.std_coeff = parse_double(fields[3], "std_coeff");
        p.t = parse_double(fields[4], "t");
        p.p = parse_double(fields[5], "p");
        if (fields[6] == "inf") {
            p.vif = std::numeric_limits<double>::infinity();
            p.vif_singular = true;
        } else {
            p.vif = parse_double(fields[6], "vif");
        }
        p.f2 = parse_double(fields[7], "f2");
        res.predictors.push_back(std::move(p));
    }
    if (!header_seen) throw DataError(path.string() + ": not a regression export");
    return out;
}

/// Human panel in the published column order, 3-decimal formatting.
inline std::string regression_panel(const RegressionResult& res, ModelSpec spec,
                                    DistanceMetric metric) {
    std::ostringstream out;
    out << "Model " << model_spec_name(spec) << " (" << metric_name(metric) << " outcome, "
        << res.n << " countries), R^2 = " << format_fixed(res.r_squared, 3) << "\n";
    out << "predictor\tcoeff\tstd_error\tstd_coeff\tt\tp\tvif\n";
    out << "(Intercept)\t" << format_fixed(res.intercept, 3) << '\t'
        << format_fixed(res.intercept_se, 3) << "\t\t" << format_fixed(res.intercept_t, 3) << '\t'
        << format_p(res.intercept_p) << "\t\n";
    for (const auto& p : res.predictors)
        out << p.name << '\t' << format_fixed(p.coeff, 3) << '\t' << format_fixed(p.std_error, 3)
            << '\t' << format_fixed(p.std_coeff, 3) << '\t' << format_fixed(p.t, 3) << '\t'
            << format_p(p.p) << '\t' << (p.vif_singular ? "inf" : format_fixed(p.vif, 3)) << '\n';
    return out.str();
}

/// Numeric correlation table across outcome and predictors (no figure).
inline std::string correlations_tsv(const RegressionDataset& ds) {
    const auto r = correlation_matrix(ds);
    std::vector<std::string> labels{std::string("outcome (") + metric_name(ds.metric) + ")"};
    for (const auto& n : ds.predictor_names) labels.push_back(n);
    std::ostringstream out;
    out << "variable";
    for (const auto& l : labels) out << '\t' << l;
    out << '\n';
    for (size_t a = 0; a < labels.size(); ++a) {
        out << labels[a];
        for (size_t b = 0; b < labels.size(); ++b) {
            out << '\t';
            if (!std::isnan(r[a][b])) out << format_fixed(r[a][b], 3);
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- sensitivity

inline std::string sensitivity_report(const std::vector<SensitivityEntry>& entries) {
    std::ostringstream out;
    out << "predictor\trir_percent\tr_partial\tr_threshold\titcv\tk_correlation\tnote\n";
    for (const auto& e : entries) {
        out << e.predictor << '\t' << format_fixed(100.0 * e.rir_fraction, 3) << '\t'
            << format_fixed(e.r_partial, 3) << '\t' << format_fixed(e.r_threshold, 3) << '\t'
            << format_fixed(e.itcv, 3) << '\t' << format_fixed(e.k_correlation, 3) << '\t'
            << (e.significant ? "" : "already non-significant") << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------- manifest

/// Resolved configuration written alongside every command output.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> config;  // resolved settings, sorted by key
    std::string timestamp = utc_timestamp();

    std::string serialize() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["tool_version"] = version_string();
        j["timestamp"] = timestamp;
        nlohmann::ordered_json cfg;
        for (const auto& [k, v] : config) cfg[k] = v;
        j["config"] = cfg;
        return j.dump(2) + "\n";
    }

    void write(const std::filesystem::path& dir) const {
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        if (!f) throw DataError("cannot write manifest in " + dir.string());
        f << serialize();
    }
};

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string());
    f << content;
}

}  // namespace globeprobe
