#include "heatpoll/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "heatpoll/metrics_store.hpp"

namespace heatpoll {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        else if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

ConfigTable::Value parse_scalar(const std::string& raw, std::size_t line_no) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) {
                ++i;
                switch (raw[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: out += raw[i];
                }
            } else {
                out += raw[i];
            }
        }
        return out;
    }
    if (raw == "true") return true;
    if (raw == "false") return false;

    std::int64_t i64 = 0;
    auto [iptr, iec] = std::from_chars(raw.data(), raw.data() + raw.size(), i64);
    if (iec == std::errc() && iptr == raw.data() + raw.size()) return i64;

    double d = 0.0;
    auto [dptr, dec] = std::from_chars(raw.data(), raw.data() + raw.size(), d);
    if (dec == std::errc() && dptr == raw.data() + raw.size()) return d;

    throw ConfigError("config line " + std::to_string(line_no) + ": cannot parse value '" + raw +
                      "'");
}

ConfigTable::Value parse_value(const std::string& raw, std::size_t line_no) {
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') {
            throw ConfigError("config line " + std::to_string(line_no) + ": unterminated array");
        }
        std::vector<ConfigTable::Value> items;
        std::string body = raw.substr(1, raw.size() - 2);
        std::string cur;
        bool in_string = false;
        for (char c : body) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!trim(cur).empty()) items.push_back(parse_scalar(trim(cur), line_no));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) items.push_back(parse_scalar(trim(cur), line_no));

        if (items.empty()) return std::vector<std::string>{};
        if (std::holds_alternative<std::string>(items.front())) {
            std::vector<std::string> out;
            for (const auto& v : items) out.push_back(std::get<std::string>(v));
            return out;
        }
        if (std::holds_alternative<double>(items.front())) {
            std::vector<double> out;
            for (const auto& v : items) {
                out.push_back(std::holds_alternative<double>(v)
                                  ? std::get<double>(v)
                                  : static_cast<double>(std::get<std::int64_t>(v)));
            }
            return out;
        }
        std::vector<std::int64_t> out;
        for (const auto& v : items) {
            if (!std::holds_alternative<std::int64_t>(v)) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": mixed array element types");
            }
            out.push_back(std::get<std::int64_t>(v));
        }
        return out;
    }
    return parse_scalar(raw, line_no);
}

} // namespace

ConfigTable ConfigTable::parse(const std::string& text) {
    ConfigTable table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        table.values_[full] = parse_value(raw, line_no);
    }
    return table;
}

ConfigTable ConfigTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

const ConfigTable::Value& ConfigTable::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string ConfigTable::get_string(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw ConfigError("config key " + key + " is not a string");
}
std::string ConfigTable::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

std::int64_t ConfigTable::get_int(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw ConfigError("config key " + key + " is not an integer");
}
std::int64_t ConfigTable::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

double ConfigTable::get_double(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw ConfigError("config key " + key + " is not a number");
}
double ConfigTable::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

bool ConfigTable::get_bool(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    throw ConfigError("config key " + key + " is not a boolean");
}
bool ConfigTable::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<std::int64_t> ConfigTable::get_int_array(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* a = std::get_if<std::vector<std::int64_t>>(&v)) return *a;
    throw ConfigError("config key " + key + " is not an integer array");
}

std::vector<std::string> ConfigTable::get_string_array(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
    throw ConfigError("config key " + key + " is not a string array");
}

std::vector<std::string> ConfigTable::subsections(const std::string& prefix) const {
    std::vector<std::string> out;
    const std::string want = prefix + ".";
    for (const auto& [key, _] : values_) {
        if (key.rfind(want, 0) != 0) continue;
        const std::size_t dot = key.find('.', want.size());
        if (dot == std::string::npos) continue;
        const std::string name = key.substr(want.size(), dot - want.size());
        if (out.empty() || out.back() != name) out.push_back(name);
    }
    return out;
}

namespace {

std::vector<std::string> load_name_pool_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open name pool file: " + path);
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) names.push_back(line);
    }
    if (names.empty()) throw ConfigError("name pool file is empty: " + path);
    return names;
}

nlohmann::ordered_json value_to_json(const ConfigTable::Value& v) {
    return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

} // namespace

RunConfig load_run_config(const ConfigTable& table) {
    RunConfig cfg;

    cfg.network.seed = static_cast<std::uint64_t>(table.get_int("network.seed", 0));
    cfg.network.positive_trait_pct = table.get_double("network.positive_trait_pct", 0.5);
    cfg.network.max_family_members =
        static_cast<int>(table.get_int("network.max_family_members", 4));
    if (table.has("network.name_pool_path")) {
        cfg.network.name_pool = load_name_pool_file(table.get_string("network.name_pool_path"));
    }
    if (table.has("network.age_range_rep")) {
        const auto range = table.get_int_array("network.age_range_rep");
        if (range.size() != 2) throw ConfigError("network.age_range_rep must be [min, max]");
        cfg.network.age_min_rep = static_cast<int>(range[0]);
        cfg.network.age_max_rep = static_cast<int>(range[1]);
    }
    if (table.has("network.age_range_member")) {
        const auto range = table.get_int_array("network.age_range_member");
        if (range.size() != 2) throw ConfigError("network.age_range_member must be [min, max]");
        cfg.network.age_min_member = static_cast<int>(range[0]);
        cfg.network.age_max_member = static_cast<int>(range[1]);
    }
    const std::string mode = table.get_string("network.initial_closeness_mode", "from_base_weights");
    if (mode == "from_base_weights") {
        cfg.network.closeness_mode = InitialClosenessMode::FromBaseWeightsClamped;
    } else if (mode == "constant") {
        cfg.network.closeness_mode = InitialClosenessMode::Constant;
    } else {
        throw ConfigError("network.initial_closeness_mode must be 'from_base_weights' or "
                          "'constant', got '" + mode + "'");
    }
    cfg.network.constant_closeness =
        static_cast<int>(table.get_int("network.constant_closeness", 3));
    if (table.has("network.base_graph")) {
        cfg.base_graph_path = table.get_string("network.base_graph");
    }
    try {
        cfg.network.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("network config: ") + e.what());
    }

    cfg.weather_path = table.get_string("weather.path", cfg.weather_path);
    cfg.weather_start = date_from_string(table.get_string("weather.start_date", "2019-02-15"));
    cfg.weather_days = static_cast<int>(table.get_int("weather.days", 30));
    cfg.weather_columns.time = table.get_string("weather.time_column", cfg.weather_columns.time);
    cfg.weather_columns.temp = table.get_string("weather.temp_column", cfg.weather_columns.temp);

    cfg.sim.days = static_cast<int>(table.get_int("sim.days", cfg.weather_days));
    if (cfg.sim.days < 1) throw ConfigError("sim.days must be >= 1");
    cfg.sim.cost_constant = table.get_double("sim.cost_constant", 1.0);
    cfg.sim.viable.viable_min = static_cast<int>(table.get_int("sim.viable_min", 10));
    cfg.sim.viable.viable_max = static_cast<int>(table.get_int("sim.viable_max", 32));
    if (cfg.sim.viable.viable_min >= cfg.sim.viable.viable_max) {
        throw ConfigError("sim.viable_min must be below sim.viable_max");
    }
    cfg.sim.seed = cfg.network.seed;
    cfg.sim.positive_trait_pct = cfg.network.positive_trait_pct;
    cfg.sim.threads = static_cast<int>(table.get_int("sim.threads", 1));
    cfg.runs_dir = table.get_string("sim.runs_dir", cfg.runs_dir);

    if (table.has("reference.cold")) {
        auto read_range = [&](const char* key) {
            const auto arr = table.get_int_array(std::string("reference.") + key);
            if (arr.size() != 2) {
                throw ConfigError(std::string("reference.") + key + " must be [low, high]");
            }
            return TemperatureReference::Range{static_cast<int>(arr[0]),
                                               static_cast<int>(arr[1])};
        };
        try {
            cfg.sim.reference = TemperatureReference({read_range("cold"), read_range("cool"),
                                                      read_range("neutral"), read_range("warm"),
                                                      read_range("hot")});
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("reference table: ") + e.what());
        }
    }

    cfg.provider_kind = table.get_string("provider.kind", "mock");
    if (cfg.provider_kind != "mock" && cfg.provider_kind != "llm") {
        throw ConfigError("provider.kind must be 'mock' or 'llm', got '" + cfg.provider_kind +
                          "'");
    }
    cfg.llm.base_url = table.get_string("provider.base_url", cfg.llm.base_url);
    cfg.llm.model = table.get_string("provider.model", cfg.llm.model);
    cfg.llm.temperature = table.get_double("provider.temperature", cfg.llm.temperature);
    cfg.llm.timeout_s = static_cast<int>(table.get_int("provider.timeout_s", cfg.llm.timeout_s));
    cfg.llm.max_retries =
        static_cast<int>(table.get_int("provider.max_retries", cfg.llm.max_retries));
    cfg.llm.limits = cfg.sim.viable;
    cfg.mock_trait_bias = table.get_bool("provider.trait_closeness_bias", false);

    nlohmann::ordered_json snapshot = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.values()) snapshot[key] = value_to_json(value);
    cfg.snapshot_json = snapshot.dump();
    return cfg;
}

ModelSpec load_model_spec(const ConfigTable& table, const std::string& name) {
    const std::string prefix = "model." + name + ".";
    if (!table.has(prefix + "kind")) {
        std::string known;
        for (const std::string& s : table.subsections("model")) {
            known += known.empty() ? s : ", " + s;
        }
        throw ConfigError("no model spec named '" + name + "'" +
                          (known.empty() ? "" : "; config defines: " + known));
    }

    ModelSpec spec;
    spec.name = name;
    spec.kind = table.get_string(prefix + "kind");
    if (spec.kind != "ols" && spec.kind != "fe" && spec.kind != "re" && spec.kind != "cre" &&
        spec.kind != "hausman" && spec.kind != "trend") {
        throw ConfigError("model." + name + ".kind must be one of ols|fe|re|cre|hausman|trend");
    }
    spec.source = table.get_string(prefix + "source",
                                   spec.kind == "ols" || spec.kind == "trend" ? "network" : "panel");
    if (spec.source != "panel" && spec.source != "network") {
        throw ConfigError("model." + name + ".source must be 'panel' or 'network'");
    }
    if (spec.kind == "trend") {
        spec.metrics = table.get_string_array(prefix + "metrics");
        if (spec.metrics.empty()) throw ConfigError("model." + name + ".metrics is empty");
        return spec;
    }
    spec.response = table.get_string(prefix + "response");
    spec.regressors = table.get_string_array(prefix + "regressors");
    if (spec.regressors.empty()) throw ConfigError("model." + name + ".regressors is empty");
    spec.entity = table.get_string(prefix + "entity", spec.entity);
    spec.time = table.get_string(prefix + "time", spec.time);
    return spec;
}

} // namespace heatpoll
