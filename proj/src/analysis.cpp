#include "heatpoll/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "heatpoll/metrics_store.hpp"

namespace heatpoll {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

CsvFrame parse_csv(const std::string& text) {
    CsvFrame frame;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV input");
    frame.columns = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields = split_line(line);
        if (fields.size() != frame.columns.size()) {
            throw ConfigError("CSV row has " + std::to_string(fields.size()) +
                              " fields, header has " + std::to_string(frame.columns.size()));
        }
        frame.rows.push_back(std::move(fields));
    }
    return frame;
}

std::size_t CsvFrame::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw ConfigError("no column named '" + name + "'");
}

std::vector<double> CsvFrame::numeric_column(const std::string& name) const {
    const std::size_t idx = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const std::string& cell = row[idx];
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
            throw ConfigError("column '" + name + "' has non-numeric cell '" + cell + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> CsvFrame::string_column(const std::string& name) const {
    const std::size_t idx = column_index(name);
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[idx]);
    return out;
}

stats::PanelDataset panel_from_frame(const CsvFrame& frame, const ModelSpec& spec) {
    stats::PanelDataset panel;
    // Entities keyed by string; ids assigned in first-appearance order.
    const std::vector<std::string> entity_keys = frame.string_column(spec.entity);
    std::map<std::string, std::int64_t> ids;
    for (const std::string& key : entity_keys) {
        if (ids.find(key) == ids.end()) {
            const std::int64_t next = static_cast<std::int64_t>(ids.size());
            ids.emplace(key, next);
        }
        panel.entity.push_back(ids.at(key));
    }
    panel.time = frame.numeric_column(spec.time);
    panel.response = frame.numeric_column(spec.response);
    panel.names = spec.regressors;
    panel.regressors = stats::Matrix(frame.rows.size(), spec.regressors.size(), 0.0);
    for (std::size_t j = 0; j < spec.regressors.size(); ++j) {
        const std::vector<double> col = frame.numeric_column(spec.regressors[j]);
        for (std::size_t i = 0; i < col.size(); ++i) panel.regressors(i, j) = col[i];
    }
    return panel;
}

namespace {

std::string result_to_csv(const stats::RegressionResult& r) {
    std::ostringstream os;
    os << "coefficient,estimate,std_error," << (r.use_z ? "z" : "t") << ",p_value,stars\n";
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        os << r.names[i] << ',' << format_double(r.estimates[i]) << ','
           << format_double(r.std_errors[i]) << ',' << format_double(r.statistics[i]) << ','
           << format_double(r.p_values[i]) << ',' << stats::significance_stars(r.p_values[i])
           << "\n";
    }
    return os.str();
}

AnalysisOutput regression_output(const stats::RegressionResult& r, const std::string& title) {
    return AnalysisOutput{stats::format_result_table(r, title), result_to_csv(r)};
}

AnalysisOutput run_trend(const ModelSpec& spec, const CsvFrame& frame) {
    const std::vector<std::string> run_ids = frame.string_column("run_id");
    const std::vector<double> days = frame.numeric_column("day_index");

    std::vector<std::string> distinct;
    for (const std::string& id : run_ids) {
        if (std::find(distinct.begin(), distinct.end(), id) == distinct.end()) {
            distinct.push_back(id);
        }
    }

    std::ostringstream csv;
    csv << "run_id,metric,slope,std_error,p_value,stars\n";
    std::ostringstream text;
    text << "trend slopes (value ~ intercept + day)\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-20s %-24s %12s %12s %12s\n", "run", "metric", "slope",
                  "std.error", "p-value");
    text << line;

    for (const std::string& metric : spec.metrics) {
        const std::vector<double> values = frame.numeric_column(metric);
        for (const std::string& run : distinct) {
            std::vector<std::pair<double, double>> series;
            for (std::size_t i = 0; i < run_ids.size(); ++i) {
                if (run_ids[i] == run) series.emplace_back(days[i], values[i]);
            }
            const stats::TrendFit fit = stats::trend_slope(series);
            csv << run << ',' << metric << ',' << format_double(fit.slope) << ','
                << format_double(fit.std_error) << ',' << format_double(fit.p_value) << ','
                << stats::significance_stars(fit.p_value) << "\n";
            std::snprintf(line, sizeof(line), "%-20s %-24s %12.4f %12.4f %12.4g %s\n", run.c_str(),
                          metric.c_str(), fit.slope, fit.std_error, fit.p_value,
                          stats::significance_stars(fit.p_value).c_str());
            text << line;
        }
    }
    text << "significance: † p<0.1, * p<0.05, ** p<0.01, *** p<0.001\n";
    return AnalysisOutput{text.str(), csv.str()};
}

AnalysisOutput run_hausman(const ModelSpec& spec, const CsvFrame& frame) {
    const stats::PanelDataset panel = panel_from_frame(frame, spec);
    const stats::RegressionResult fe = stats::fe_fit(panel);
    const stats::RegressionResult re = stats::re_fit(panel);
    std::vector<std::string> common;
    for (const std::string& name : fe.names) {
        if (re.index_of(name)) common.push_back(name);
    }
    const stats::HausmanResult h = stats::hausman_test(fe, re, common);

    std::ostringstream text;
    text << "Hausman test (FE vs RE) on: ";
    for (std::size_t i = 0; i < common.size(); ++i) text << (i ? ", " : "") << common[i];
    text << "\nH = " << h.statistic << ", df = " << h.df << ", p = " << h.p_value;
    if (h.pseudo_inverse_used) text << "  [covariance difference not PD; pseudo-inverse used]";
    text << "\n" << (h.p_value < 0.05 ? "random effects rejected at the 5% level"
                                      : "random effects not rejected at the 5% level")
         << "\n";
    std::ostringstream csv;
    csv << "statistic,df,p_value,pseudo_inverse_used\n"
        << format_double(h.statistic) << ',' << h.df << ',' << format_double(h.p_value) << ','
        << (h.pseudo_inverse_used ? 1 : 0) << "\n";
    return AnalysisOutput{text.str(), csv.str()};
}

} // namespace

AnalysisOutput run_model_spec(const ModelSpec& spec, const CsvFrame& frame) {
    if (spec.kind == "trend") return run_trend(spec, frame);
    if (spec.kind == "hausman") return run_hausman(spec, frame);

    if (spec.kind == "ols") {
        const std::vector<double> y = frame.numeric_column(spec.response);
        stats::Matrix X(frame.rows.size(), spec.regressors.size(), 0.0);
        for (std::size_t j = 0; j < spec.regressors.size(); ++j) {
            const std::vector<double> col = frame.numeric_column(spec.regressors[j]);
            for (std::size_t i = 0; i < col.size(); ++i) X(i, j) = col[i];
        }
        const stats::RegressionResult r = stats::ols_fit(X, y, spec.regressors, true);
        return regression_output(r, "OLS: " + spec.response);
    }

    const stats::PanelDataset panel = panel_from_frame(frame, spec);
    if (spec.kind == "fe") {
        return regression_output(stats::fe_fit(panel), "fixed effects: " + spec.response);
    }
    if (spec.kind == "re") {
        return regression_output(stats::re_fit(panel), "random effects GLS: " + spec.response);
    }
    return regression_output(stats::cre_fit(panel),
                             "correlated random effects: " + spec.response);
}

} // namespace heatpoll
