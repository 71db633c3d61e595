#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "heatpoll/decision.hpp"
#include "heatpoll/engine.hpp"
#include "heatpoll/llm_provider.hpp"
#include "heatpoll/network_builder.hpp"

namespace heatpoll {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Minimal TOML-style reader: [section] headers, key = value lines with
// strings, integers, floats, booleans and flat arrays, # comments. Keys
// are exposed flattened as "section.key".
class ConfigTable {
public:
    using Value = std::variant<bool, std::int64_t, double, std::string,
                               std::vector<std::int64_t>, std::vector<double>,
                               std::vector<std::string>>;

    static ConfigTable parse(const std::string& text);
    static ConfigTable parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key) const; // integers promote
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::int64_t> get_int_array(const std::string& key) const;
    std::vector<std::string> get_string_array(const std::string& key) const;

    // Distinct section names directly under `prefix` (e.g. model specs).
    std::vector<std::string> subsections(const std::string& prefix) const;

    const std::map<std::string, Value>& values() const { return values_; }

    void set(const std::string& key, Value v) { values_[key] = std::move(v); }

private:
    const Value& require(const std::string& key) const;
    std::map<std::string, Value> values_;
};

// Fully resolved run configuration shared by the CLI subcommands.
struct RunConfig {
    BuildConfig network;
    std::optional<std::string> base_graph_path;

    std::string weather_path = "data/weather_ankara_30d.csv";
    Date weather_start{};
    int weather_days = 30;
    WeatherColumns weather_columns;

    SimParams sim;
    std::string runs_dir = "runs";

    std::string provider_kind = "mock"; // mock | llm
    LlmConfig llm;
    bool mock_trait_bias = false;

    // Snapshot of every resolved key, for the manifest.
    std::string snapshot_json;
};

RunConfig load_run_config(const ConfigTable& table);

struct ModelSpec {
    std::string name;
    std::string kind;   // ols | fe | re | cre | hausman | trend
    std::string source; // panel | network
    std::string response;
    std::vector<std::string> regressors;
    std::string entity = "entity_key";
    std::string time = "day_index";
    std::vector<std::string> metrics; // trend only
};

ModelSpec load_model_spec(const ConfigTable& table, const std::string& name);

} // namespace heatpoll
