#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heatpoll/graph.hpp"

namespace heatpoll {

struct AgentDayRecord {
    std::string run_id;
    int day_index = 0;
    int agent_id = 0;
    Role role = Role::FamilyRepresentative;
    int family_id = 0;
    int degree_choice = 0;                 // phase-1 choice
    std::optional<int> final_degree;       // representatives only
    int happiness = 0;
    TraitProfile traits;
    HeaterPreference heater_preference = HeaterPreference::Neutral;
    double degree_centrality = 0.0;
    bool fallback_used = false;
    std::string reasoning;                 // phase-1 reasoning
    std::optional<std::string> reasoning_phase2;
};

struct NetworkDayRecord {
    std::string run_id;
    int day_index = 0;
    double avg_friend_weight = 0.0;
    int strong_friendships = 0;
    double avg_happiness = 0.0;
    double temp_out = 0.0;
    int setpoint = 0;
    double cost = 0.0;
    double positive_trait_pct = 0.0;
};

struct DuplicateKey : std::runtime_error {
    DuplicateKey(int day, int agent)
        : std::runtime_error("duplicate agent-day record (day " + std::to_string(day) +
                             ", agent " + std::to_string(agent) + ")") {}
};
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};
struct UnknownRun : std::runtime_error {
    explicit UnknownRun(const std::string& id) : std::runtime_error("unknown run: " + id) {}
};
struct DuplicateRunId : std::runtime_error {
    explicit DuplicateRunId(const std::string& id)
        : std::runtime_error("run directory already exists: " + id) {}
};

// Writer for one run directory:
//   runs/<run-id>/manifest.json
//   runs/<run-id>/days/day_0000.json   (graph snapshot per day)
//   runs/<run-id>/agent_days.jsonl
//   runs/<run-id>/network_days.csv
//   runs/<run-id>/snapshot.json        (final graph)
class RunStore {
public:
    RunStore(const std::filesystem::path& runs_dir, const std::string& run_id, bool force = false);

    void append_agent_day(const AgentDayRecord& rec);
    void append_network_day(const NetworkDayRecord& rec);
    void write_day_snapshot(int day_index, const SocialGraph& graph);
    void write_final_snapshot(const SocialGraph& graph);
    void write_manifest(const std::string& manifest_json);

    const std::string& run_id() const { return run_id_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::string run_id_;
    std::filesystem::path dir_;
    std::ofstream agent_days_;
    std::ofstream network_days_;
    std::set<std::pair<int, int>> seen_keys_;
};

// Read side for exports and analysis.
struct RunData {
    std::string run_id;
    std::vector<AgentDayRecord> agent_days;
    std::vector<NetworkDayRecord> network_days;
};

RunData load_run(const std::filesystem::path& runs_dir, const std::string& run_id);
std::vector<RunData> load_runs(const std::filesystem::path& runs_dir,
                               const std::vector<std::string>& run_ids);

// Tidy panel CSV: one row per (run, day, agent), 0/1 indicators per
// positive adjective and per non-reference heater preference (Neutral is
// the baseline). Rows ordered (run_id, day, agent); byte-stable.
std::string export_panel_csv(const std::vector<RunData>& runs);

// One row per (run, day) with the NetworkDayRecord columns.
std::string export_network_csv(const std::vector<RunData>& runs);

// Chart-ready series (day, value, run) per network metric:
// avg_friendship_weight, strong_friendships, avg_happiness,
// degree_outside, temperature_set, cost.
std::map<std::string, std::string> report_series_csvs(const std::vector<RunData>& runs);

std::string format_double(double v); // shortest round-trip decimal form

} // namespace heatpoll
