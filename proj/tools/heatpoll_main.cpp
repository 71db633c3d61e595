#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "heatpoll/analysis.hpp"
#include "heatpoll/config.hpp"
#include "heatpoll/engine.hpp"
#include "heatpoll/metrics_store.hpp"
#include "heatpoll/mock_provider.hpp"
#include "heatpoll/network_builder.hpp"

namespace fs = std::filesystem;
using namespace heatpoll;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string resolve_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("HEATPOLL_CONFIG")) return env;
    throw ConfigError("no config file: pass --config or set HEATPOLL_CONFIG");
}

std::string default_run_id() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "run-%Y%m%d-%H%M%S", &tm);
    return buf;
}

std::vector<std::string> split_run_list(const std::string& runs) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : runs) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonFlags {
    std::string config_path;
    std::optional<std::int64_t> seed;
    std::optional<double> positive_trait_pct;
    std::optional<std::int64_t> days;

    RunConfig load() const {
        ConfigTable table = ConfigTable::parse_file(resolve_config_path(config_path));
        if (seed) table.set("network.seed", *seed);
        if (positive_trait_pct) table.set("network.positive_trait_pct", *positive_trait_pct);
        if (days) table.set("sim.days", *days);
        return load_run_config(table);
    }
};

SocialGraph obtain_graph(const RunConfig& cfg, const std::string& graph_path) {
    if (!graph_path.empty()) return graph_from_json(read_file(graph_path));
    if (cfg.base_graph_path) {
        SocialGraph g = graph_from_json(read_file(*cfg.base_graph_path));
        Rng rng(cfg.network.seed);
        expand_families(g, cfg.network, rng);
        assign_attributes(g, cfg.network, rng);
        return g;
    }
    return build_network(cfg.network);
}

std::vector<DailyWeather> load_weather(const RunConfig& cfg) {
    if (!fs::exists(cfg.weather_path)) throw IoError("weather file not found: " + cfg.weather_path);
    const auto hourly = load_tmy_csv(cfg.weather_path, cfg.weather_columns);
    return daily_means(hourly, cfg.weather_start, cfg.sim.days);
}

int cmd_build_network(const CommonFlags& flags, const std::string& out_path) {
    const RunConfig cfg = flags.load();
    const SocialGraph graph = obtain_graph(cfg, "");
    write_file(out_path, graph_to_json(graph));

    std::size_t members = 0;
    for (const auto& [_, p] : graph.nodes()) {
        if (p.role == Role::FamilyMember) ++members;
    }
    nlohmann::ordered_json manifest{
        {"seed", cfg.network.seed},
        {"positive_trait_pct", cfg.network.positive_trait_pct},
        {"nodes", graph.node_count()},
        {"edges", graph.edge_count()},
        {"representatives", graph.node_count() - members},
        {"family_members", members},
    };
    fs::path manifest_path(out_path);
    manifest_path.replace_extension(".manifest.json");
    write_file(manifest_path, manifest.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << graph.node_count() << " nodes, "
              << graph.edge_count() << " edges) and " << manifest_path.string() << "\n";
    return kExitOk;
}

int cmd_run(const CommonFlags& flags, const std::string& graph_path, std::string run_id,
            bool force, std::optional<std::int64_t> threads) {
    RunConfig cfg = flags.load();
    if (threads) cfg.sim.threads = static_cast<int>(*threads);
    if (run_id.empty()) run_id = default_run_id();

    SocialGraph graph = obtain_graph(cfg, graph_path);
    const std::vector<DailyWeather> weather = load_weather(cfg);

    std::unique_ptr<DecisionProvider> provider;
    if (cfg.provider_kind == "mock") {
        provider = std::make_unique<MockProvider>(
            MockProvider::Options{cfg.sim.viable, cfg.mock_trait_bias});
    } else {
        provider = std::make_unique<LlmProvider>(cfg.llm);
    }

    RunStore store(cfg.runs_dir, run_id, force);
    const RunSummary summary =
        run_simulation(graph, weather, *provider, cfg.sim, store, cfg.snapshot_json);

    std::cout << "run " << run_id << ": " << summary.days << " days, " << summary.agents
              << " agents, final setpoint " << summary.building_setpoint_last << "\n";
    const int fallbacks = summary.phase1_fallbacks + summary.phase2_fallbacks;
    if (fallbacks > 0) {
        std::cerr << "warning: " << fallbacks << " provider fallbacks ("
                  << summary.phase1_fallbacks << " phase 1, " << summary.phase2_fallbacks
                  << " phase 2); records are tagged fallback_used\n";
    }
    return kExitOk;
}

int cmd_analyze(const CommonFlags& flags, const std::string& runs, const std::string& spec_name,
                const std::string& out_dir) {
    const RunConfig cfg = flags.load();
    const ConfigTable table = ConfigTable::parse_file(resolve_config_path(flags.config_path));
    const ModelSpec spec = load_model_spec(table, spec_name);

    const std::vector<RunData> data = load_runs(cfg.runs_dir, split_run_list(runs));
    const std::string panel_csv = export_panel_csv(data);
    const std::string network_csv = export_network_csv(data);

    const fs::path out(out_dir);
    write_file(out / "panel.csv", panel_csv);
    write_file(out / "network.csv", network_csv);

    const CsvFrame frame = parse_csv(spec.source == "panel" ? panel_csv : network_csv);
    const AnalysisOutput result = run_model_spec(spec, frame);
    write_file(out / (spec.name + "_coefficients.csv"), result.coefficients_csv);
    write_file(out / (spec.name + "_table.txt"), result.table_text);
    std::cout << result.table_text;
    return kExitOk;
}

int cmd_report(const CommonFlags& flags, const std::string& runs, const std::string& out_dir) {
    const RunConfig cfg = flags.load();
    const std::vector<RunData> data = load_runs(cfg.runs_dir, split_run_list(runs));
    const auto series = report_series_csvs(data);
    for (const auto& [name, csv] : series) {
        write_file(fs::path(out_dir) / (name + ".csv"), csv);
    }
    std::cout << "wrote " << series.size() << " series files to " << out_dir << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"personality-driven temperature negotiation simulator"};
    app.require_subcommand(1);

    CommonFlags flags;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", flags.config_path,
                        "config file (falls back to $HEATPOLL_CONFIG)");
        cmd->add_option("--seed", flags.seed, "override network.seed");
        cmd->add_option("--positive-trait-pct", flags.positive_trait_pct,
                        "override network.positive_trait_pct");
        cmd->add_option("--days", flags.days, "override sim.days");
    };

    // build-network
    auto* build = app.add_subcommand("build-network", "build the social network and write JSON");
    std::string build_out = "graph.json";
    add_common(build);
    build->add_option("--out", build_out, "output graph path");

    // run
    auto* run = app.add_subcommand("run", "execute a simulation run");
    std::string run_graph;
    std::string run_id;
    bool run_force = false;
    std::optional<std::int64_t> threads_opt;
    add_common(run);
    run->add_option("--graph", run_graph, "pre-built graph JSON (otherwise built from config)");
    run->add_option("--run-id", run_id, "run identifier (defaults to a timestamp)");
    run->add_flag("--force", run_force, "replace an existing run directory");
    run->add_option("--threads", threads_opt, "parallel provider calls within a phase");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "export datasets and fit a model spec");
    std::string analyze_runs;
    std::string analyze_spec;
    std::string analyze_out = "analysis";
    add_common(analyze);
    analyze->add_option("--runs", analyze_runs, "comma-separated run ids")->required();
    analyze->add_option("--model-spec", analyze_spec, "model spec name from the config")
        ->required();
    analyze->add_option("--out", analyze_out, "output directory");

    // report
    auto* report = app.add_subcommand("report", "write chart-ready per-metric series CSVs");
    std::string report_runs;
    std::string report_out = "report";
    add_common(report);
    report->add_option("--runs", report_runs, "comma-separated run ids")->required();
    report->add_option("--out", report_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (build->parsed()) return cmd_build_network(flags, build_out);
        if (run->parsed()) return cmd_run(flags, run_graph, run_id, run_force, threads_opt);
        if (analyze->parsed()) return cmd_analyze(flags, analyze_runs, analyze_spec, analyze_out);
        if (report->parsed()) return cmd_report(flags, report_runs, report_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DuplicateRunId& e) {
        std::cerr << "error: " << e.what() << " (use --force to replace)\n";
        return kExitConfig;
    } catch (const UnknownRun& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
