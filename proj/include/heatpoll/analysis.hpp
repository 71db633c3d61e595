#pragma once

#include <string>
#include <vector>

#include "heatpoll/config.hpp"
#include "heatpoll/stats.hpp"

namespace heatpoll {

// In-memory CSV with string cells; numeric views are extracted on demand.
struct CsvFrame {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const; // throws ConfigError
    std::vector<double> numeric_column(const std::string& name) const;
    std::vector<std::string> string_column(const std::string& name) const;
};

CsvFrame parse_csv(const std::string& text);

stats::PanelDataset panel_from_frame(const CsvFrame& frame, const ModelSpec& spec);

struct AnalysisOutput {
    std::string table_text;  // human-readable, with significance marks
    std::string coefficients_csv;
};

// Dispatches on spec.kind. `frame` is the panel export for panel models
// and the network export for ols/trend.
AnalysisOutput run_model_spec(const ModelSpec& spec, const CsvFrame& frame);

} // namespace heatpoll
