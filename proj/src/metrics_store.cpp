#include "heatpoll/metrics_store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace heatpoll {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
}

ordered_json agent_day_to_json(const AgentDayRecord& r) {
    ordered_json traits = ordered_json::object();
    for (std::size_t i = 0; i < kTraitCount; ++i) {
        const auto d = static_cast<TraitDim>(i);
        traits[std::string(trait_info(d).key)] = std::string(r.traits.adjective(d));
    }
    ordered_json j{
        {"run_id", r.run_id},
        {"day_index", r.day_index},
        {"agent_id", r.agent_id},
        {"role", std::string(to_string(r.role))},
        {"family_id", r.family_id},
        {"degree_choice", r.degree_choice},
        {"final_degree", r.final_degree ? ordered_json(*r.final_degree) : ordered_json(nullptr)},
        {"happiness", r.happiness},
        {"traits", std::move(traits)},
        {"heater_preference", std::string(to_string(r.heater_preference))},
        {"degree_centrality", r.degree_centrality},
        {"fallback_used", r.fallback_used},
        {"reasoning", r.reasoning},
        {"reasoning_phase2",
         r.reasoning_phase2 ? ordered_json(*r.reasoning_phase2) : ordered_json(nullptr)},
    };
    return j;
}

AgentDayRecord agent_day_from_json(const ordered_json& j) {
    AgentDayRecord r;
    r.run_id = j.at("run_id").get<std::string>();
    r.day_index = j.at("day_index").get<int>();
    r.agent_id = j.at("agent_id").get<int>();
    r.role = role_from_string(j.at("role").get<std::string>());
    r.family_id = j.at("family_id").get<int>();
    r.degree_choice = j.at("degree_choice").get<int>();
    if (!j.at("final_degree").is_null()) r.final_degree = j.at("final_degree").get<int>();
    r.happiness = j.at("happiness").get<int>();
    for (std::size_t i = 0; i < kTraitCount; ++i) {
        const auto d = static_cast<TraitDim>(i);
        const std::string adj = j.at("traits").at(std::string(trait_info(d).key)).get<std::string>();
        r.traits.set_positive(d, TraitProfile::polarity_of(d, adj));
    }
    r.heater_preference = preference_from_string(j.at("heater_preference").get<std::string>());
    r.degree_centrality = j.at("degree_centrality").get<double>();
    r.fallback_used = j.at("fallback_used").get<bool>();
    r.reasoning = j.at("reasoning").get<std::string>();
    if (!j.at("reasoning_phase2").is_null()) {
        r.reasoning_phase2 = j.at("reasoning_phase2").get<std::string>();
    }
    return r;
}

constexpr const char* kNetworkHeader =
    "run_id,day_index,avg_friend_weight,strong_friendships,avg_happiness,temp_out,setpoint,"
    "cost,positive_trait_pct";

std::string network_day_to_csv(const NetworkDayRecord& r) {
    std::ostringstream os;
    os << csv_field(r.run_id) << ',' << r.day_index << ',' << format_double(r.avg_friend_weight)
       << ',' << r.strong_friendships << ',' << format_double(r.avg_happiness) << ','
       << format_double(r.temp_out) << ',' << r.setpoint << ',' << format_double(r.cost) << ','
       << format_double(r.positive_trait_pct);
    return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
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

RunStore::RunStore(const fs::path& runs_dir, const std::string& run_id, bool force)
    : run_id_(run_id), dir_(runs_dir / run_id) {
    if (fs::exists(dir_)) {
        if (!force) throw DuplicateRunId(run_id);
        fs::remove_all(dir_);
    }
    std::error_code ec;
    fs::create_directories(dir_ / "days", ec);
    if (ec) throw IoError("cannot create run directory " + dir_.string() + ": " + ec.message());

    agent_days_.open(dir_ / "agent_days.jsonl");
    network_days_.open(dir_ / "network_days.csv");
    if (!agent_days_ || !network_days_) {
        throw IoError("cannot open output files under " + dir_.string());
    }
    network_days_ << kNetworkHeader << "\n";
}

void RunStore::append_agent_day(const AgentDayRecord& rec) {
    if (!seen_keys_.emplace(rec.day_index, rec.agent_id).second) {
        throw DuplicateKey(rec.day_index, rec.agent_id);
    }
    agent_days_ << agent_day_to_json(rec).dump(-1, ' ', false,
                                               ordered_json::error_handler_t::replace)
                << "\n";
    agent_days_.flush();
    if (!agent_days_) throw IoError("write failed on agent_days.jsonl");
}

void RunStore::append_network_day(const NetworkDayRecord& rec) {
    network_days_ << network_day_to_csv(rec) << "\n";
    network_days_.flush();
    if (!network_days_) throw IoError("write failed on network_days.csv");
}

void RunStore::write_day_snapshot(int day_index, const SocialGraph& graph) {
    char name[32];
    std::snprintf(name, sizeof(name), "day_%04d.json", day_index);
    std::ofstream out(dir_ / "days" / name);
    if (!out) throw IoError("cannot write day snapshot " + std::string(name));
    out << graph_to_json(graph);
}

void RunStore::write_final_snapshot(const SocialGraph& graph) {
    std::ofstream out(dir_ / "snapshot.json");
    if (!out) throw IoError("cannot write snapshot.json");
    out << graph_to_json(graph);
}

void RunStore::write_manifest(const std::string& manifest_json) {
    std::ofstream out(dir_ / "manifest.json");
    if (!out) throw IoError("cannot write manifest.json");
    out << manifest_json;
}

RunData load_run(const fs::path& runs_dir, const std::string& run_id) {
    const fs::path dir = runs_dir / run_id;
    if (!fs::exists(dir / "agent_days.jsonl")) throw UnknownRun(run_id);

    RunData data;
    data.run_id = run_id;

    std::ifstream agents(dir / "agent_days.jsonl");
    std::string line;
    while (std::getline(agents, line)) {
        if (line.empty()) continue;
        data.agent_days.push_back(agent_day_from_json(ordered_json::parse(line)));
    }

    std::ifstream net(dir / "network_days.csv");
    if (!net) throw UnknownRun(run_id);
    std::getline(net, line); // header
    while (std::getline(net, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 9) throw IoError("malformed network_days.csv row in run " + run_id);
        NetworkDayRecord r;
        r.run_id = f[0];
        r.day_index = std::stoi(f[1]);
        r.avg_friend_weight = std::stod(f[2]);
        r.strong_friendships = std::stoi(f[3]);
        r.avg_happiness = std::stod(f[4]);
        r.temp_out = std::stod(f[5]);
        r.setpoint = std::stoi(f[6]);
        r.cost = std::stod(f[7]);
        r.positive_trait_pct = std::stod(f[8]);
        data.network_days.push_back(std::move(r));
    }
    return data;
}

std::vector<RunData> load_runs(const fs::path& runs_dir, const std::vector<std::string>& run_ids) {
    if (run_ids.empty()) throw UnknownRun("(no runs given)");
    std::vector<RunData> out;
    out.reserve(run_ids.size());
    for (const std::string& id : run_ids) out.push_back(load_run(runs_dir, id));
    return out;
}

std::string export_panel_csv(const std::vector<RunData>& runs) {
    std::ostringstream os;
    os << "run_id,day_index,agent_id,entity_key,role,family_id,degree_choice,final_degree,"
          "happiness,heater_preference,degree_centrality,fallback_used";
    for (const TraitInfo& t : kTraitTable) {
        // indicator named for the positive adjective, lowercased
        std::string adj(t.positive);
        for (char& c : adj) c = c == ' ' || c == '-' ? '_' : static_cast<char>(std::tolower(c));
        os << ',' << adj;
    }
    os << ",pref_cold,pref_cool,pref_warm,pref_hot\n";

    std::vector<const AgentDayRecord*> rows;
    for (const RunData& run : runs) {
        for (const AgentDayRecord& r : run.agent_days) rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const AgentDayRecord* a, const AgentDayRecord* b) {
        return std::tie(a->run_id, a->day_index, a->agent_id) <
               std::tie(b->run_id, b->day_index, b->agent_id);
    });

    for (const AgentDayRecord* r : rows) {
        os << csv_field(r->run_id) << ',' << r->day_index << ',' << r->agent_id << ','
           << csv_field(r->run_id + ":" + std::to_string(r->agent_id)) << ','
           << to_string(r->role) << ',' << r->family_id << ',' << r->degree_choice << ',';
        if (r->final_degree) os << *r->final_degree;
        os << ',' << r->happiness << ',' << to_string(r->heater_preference) << ','
           << format_double(r->degree_centrality) << ',' << (r->fallback_used ? 1 : 0);
        for (std::size_t i = 0; i < kTraitCount; ++i) {
            os << ',' << (r->traits.is_positive(static_cast<TraitDim>(i)) ? 1 : 0);
        }
        const HeaterPreference p = r->heater_preference;
        os << ',' << (p == HeaterPreference::Cold ? 1 : 0) << ','
           << (p == HeaterPreference::Cool ? 1 : 0) << ',' << (p == HeaterPreference::Warm ? 1 : 0)
           << ',' << (p == HeaterPreference::Hot ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string export_network_csv(const std::vector<RunData>& runs) {
    std::vector<const NetworkDayRecord*> rows;
    for (const RunData& run : runs) {
        for (const NetworkDayRecord& r : run.network_days) rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const NetworkDayRecord* a, const NetworkDayRecord* b) {
        return std::tie(a->run_id, a->day_index) < std::tie(b->run_id, b->day_index);
    });
    std::ostringstream os;
    os << kNetworkHeader << "\n";
    for (const NetworkDayRecord* r : rows) os << network_day_to_csv(*r) << "\n";
    return os.str();
}

std::map<std::string, std::string> report_series_csvs(const std::vector<RunData>& runs) {
    std::vector<const NetworkDayRecord*> rows;
    for (const RunData& run : runs) {
        for (const NetworkDayRecord& r : run.network_days) rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const NetworkDayRecord* a, const NetworkDayRecord* b) {
        return std::tie(a->run_id, a->day_index) < std::tie(b->run_id, b->day_index);
    });

    const std::vector<std::pair<std::string, std::function<std::string(const NetworkDayRecord&)>>>
        metrics = {
            {"avg_friendship_weight",
             [](const NetworkDayRecord& r) { return format_double(r.avg_friend_weight); }},
            {"strong_friendships",
             [](const NetworkDayRecord& r) { return std::to_string(r.strong_friendships); }},
            {"avg_happiness",
             [](const NetworkDayRecord& r) { return format_double(r.avg_happiness); }},
            {"degree_outside",
             [](const NetworkDayRecord& r) { return format_double(r.temp_out); }},
            {"temperature_set",
             [](const NetworkDayRecord& r) { return std::to_string(r.setpoint); }},
            {"cost", [](const NetworkDayRecord& r) { return format_double(r.cost); }},
        };

    std::map<std::string, std::string> out;
    for (const auto& [name, value_of] : metrics) {
        std::ostringstream os;
        os << "day,value,run\n";
        for (const NetworkDayRecord* r : rows) {
            os << r->day_index << ',' << value_of(*r) << ',' << csv_field(r->run_id) << "\n";
        }
        out[name] = os.str();
    }
    return out;
}

} // namespace heatpoll
