#include "heatpoll/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <thread>

#include <nlohmann/json.hpp>

#include "heatpoll/metrics_store.hpp"
#include "heatpoll/prompts.hpp"
#include "heatpoll/rounding.hpp"

namespace heatpoll {

namespace {

// Runs fn(i) for i in [0, n), optionally across threads. Results land in
// index order, so scheduling cannot affect the outcome.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

std::map<int, std::vector<int>> families_by_id(const SocialGraph& graph) {
    std::map<int, std::vector<int>> families;
    for (const auto& [id, p] : graph.nodes()) families[p.family_id].push_back(id);
    return families; // member lists ascend because nodes() is id-ordered
}

} // namespace

double compute_cost(int setpoint, double temp_out, double cost_constant) {
    return std::abs(static_cast<double>(setpoint) - temp_out) * cost_constant;
}

DayOutcome run_day(SocialGraph& graph, const DailyWeather& weather,
                   const DecisionProvider& provider, const std::optional<DayOutcome>& prev,
                   const SimParams& params, const DayOrdering* ordering) {
    DayOutcome out;
    out.day_index = weather.day_index;
    out.temp_out = weather.temp_out;

    const std::map<int, std::vector<int>> families = families_by_id(graph);
    const std::optional<int> prev_setpoint =
        prev ? std::optional<int>(prev->building_setpoint) : std::nullopt;

    // ---- Phase 1: family poll ----------------------------------------
    std::vector<int> family_order;
    if (ordering && !ordering->family_order.empty()) {
        family_order = ordering->family_order;
    } else {
        for (const auto& [fid, _] : families) family_order.push_back(fid);
    }

    std::vector<int> phase1_agents;
    std::vector<Phase1Context> phase1_ctx;
    for (int fid : family_order) {
        const std::vector<int>& members = families.at(fid);
        for (int id : members) {
            const Persona& me = graph.persona(id);
            Phase1Context ctx;
            ctx.persona = me;
            for (int other : members) {
                if (other == id) continue;
                const Persona& o = graph.persona(other);
                ctx.family.push_back(FamilyMemberInfo{o.name, o.heater_preference,
                                                      trait_summary(o.traits)});
            }
            ctx.weather = weather;
            ctx.previous_final_temp = prev_setpoint;
            ctx.reference = params.reference;
            phase1_agents.push_back(id);
            phase1_ctx.push_back(std::move(ctx));
        }
    }

    std::vector<Phase1Result> phase1_results(phase1_ctx.size());
    parallel_for(phase1_ctx.size(), params.threads,
                 [&](std::size_t i) { phase1_results[i] = provider.phase1(phase1_ctx[i]); });

    for (std::size_t i = 0; i < phase1_agents.size(); ++i) {
        const Phase1Result& r = phase1_results[i];
        out.phase1[phase1_agents[i]] =
            AgentPhase1Outcome{r.decision.degree_choice, r.decision.happiness, r.fallback,
                               r.decision.reasoning};
    }
    // Apply staged happiness in ascending id.
    for (const auto& [id, o] : out.phase1) graph.persona(id).happiness = o.happiness;

    for (const auto& [fid, members] : families) {
        double sum = 0.0;
        for (int id : members) sum += out.phase1.at(id).degree_choice;
        out.family_averages[fid] = round1(sum / static_cast<double>(members.size()));
    }

    // ---- Phase 2: building poll ---------------------------------------
    // Friend snapshots are taken before any closeness update; updates are
    // staged and applied after the loop in ascending updater id.
    std::vector<int> rep_order;
    if (ordering && !ordering->rep_order.empty()) {
        rep_order = ordering->rep_order;
    } else {
        for (const auto& [fid, _] : families) rep_order.push_back(fid);
    }

    struct RepCall {
        int rep = 0;
        Phase2Context ctx;
        std::vector<std::pair<std::string, int>> friend_ids; // name -> node id
    };
    std::vector<RepCall> calls;
    for (int rep : rep_order) {
        RepCall call;
        call.rep = rep;
        const Persona& me = graph.persona(rep);
        call.ctx.persona = me;
        call.ctx.family_average = out.family_averages.at(rep);
        for (int fr : graph.friends_of(rep)) {
            const Persona& f = graph.persona(fr);
            FriendInfo info;
            info.name = f.name;
            info.closeness = graph.closeness(rep, fr);
            info.family_choice_today = out.family_averages.at(f.family_id);
            info.last_three_suggestions = f.last_choices;
            call.ctx.friends.push_back(std::move(info));
            call.friend_ids.emplace_back(f.name, fr);
        }
        call.ctx.weather = weather;
        call.ctx.reference = params.reference;
        calls.push_back(std::move(call));
    }

    std::vector<Phase2Result> phase2_results(calls.size());
    parallel_for(calls.size(), params.threads,
                 [&](std::size_t i) { phase2_results[i] = provider.phase2(calls[i].ctx); });

    struct StagedUpdate {
        int updater;
        int friend_id;
        int closeness;
    };
    std::vector<StagedUpdate> staged;
    for (std::size_t i = 0; i < calls.size(); ++i) {
        const RepCall& call = calls[i];
        const Phase2Result& r = phase2_results[i];
        out.rep_suggestions[call.rep] = r.decision.final_degree;
        out.phase2[call.rep] = AgentPhase2Outcome{r.decision.final_degree, r.fallback,
                                                  r.decision.reasoning};
        for (const auto& [name, value] : r.decision.closeness_updates) {
            int friend_id = -1;
            for (const auto& [fname, fid] : call.friend_ids) {
                if (fname == name) {
                    friend_id = fid;
                    break;
                }
            }
            if (friend_id < 0) {
                throw std::logic_error("provider returned closeness update for unknown friend '" +
                                       name + "'");
            }
            staged.push_back(StagedUpdate{call.rep, friend_id, value});
        }
    }
    std::stable_sort(staged.begin(), staged.end(),
                     [](const StagedUpdate& a, const StagedUpdate& b) { return a.updater < b.updater; });
    for (const StagedUpdate& u : staged) {
        graph.set_closeness(u.updater, u.friend_id, u.closeness);
    }

    // ---- Setpoint, cost, history --------------------------------------
    double sum = 0.0;
    for (const auto& [_, degree] : out.rep_suggestions) sum += degree;
    out.building_setpoint =
        round_half_away(sum / static_cast<double>(out.rep_suggestions.size()));
    out.cost = compute_cost(out.building_setpoint, out.temp_out, params.cost_constant);

    for (const auto& [rep, degree] : out.rep_suggestions) {
        std::vector<int>& history = graph.persona(rep).last_choices;
        history.push_back(degree);
        if (history.size() > 3) history.erase(history.begin(), history.end() - 3);
    }
    return out;
}

RunSummary run_simulation(SocialGraph& graph, const std::vector<DailyWeather>& weather,
                          const DecisionProvider& provider, const SimParams& params,
                          RunStore& store, const std::string& config_snapshot_json) {
    if (weather.size() < static_cast<std::size_t>(params.days)) {
        throw std::invalid_argument("weather series covers " + std::to_string(weather.size()) +
                                    " days, run needs " + std::to_string(params.days));
    }
    const auto started = std::chrono::system_clock::now();
    RunSummary summary;
    summary.agents = graph.node_count();

    std::optional<DayOutcome> prev;
    for (int d = 0; d < params.days; ++d) {
        const DayOutcome outcome = run_day(graph, weather.at(d), provider, prev, params);

        for (const auto& [id, p] : graph.nodes()) {
            const AgentPhase1Outcome& p1 = outcome.phase1.at(id);
            AgentDayRecord rec;
            rec.run_id = store.run_id();
            rec.day_index = d;
            rec.agent_id = id;
            rec.role = p.role;
            rec.family_id = p.family_id;
            rec.degree_choice = p1.degree_choice;
            rec.happiness = p.happiness;
            rec.traits = p.traits;
            rec.heater_preference = p.heater_preference;
            rec.degree_centrality = degree_centrality(graph, id);
            rec.fallback_used = p1.fallback;
            rec.reasoning = p1.reasoning;
            if (p.role == Role::FamilyRepresentative) {
                const AgentPhase2Outcome& p2 = outcome.phase2.at(id);
                rec.final_degree = p2.final_degree;
                rec.fallback_used = rec.fallback_used || p2.fallback;
                rec.reasoning_phase2 = p2.reasoning;
            }
            store.append_agent_day(rec);
            if (p1.fallback) ++summary.phase1_fallbacks;
        }
        for (const auto& [_, p2] : outcome.phase2) {
            if (p2.fallback) ++summary.phase2_fallbacks;
        }

        NetworkDayRecord net;
        net.run_id = store.run_id();
        net.day_index = d;
        net.avg_friend_weight = average_friend_weight(graph);
        net.strong_friendships = strong_friendship_count(graph);
        net.avg_happiness = average_happiness(graph);
        net.temp_out = outcome.temp_out;
        net.setpoint = outcome.building_setpoint;
        net.cost = outcome.cost;
        net.positive_trait_pct = params.positive_trait_pct;
        store.append_network_day(net);

        store.write_day_snapshot(d, graph);
        summary.building_setpoint_last = outcome.building_setpoint;
        prev = outcome;
    }
    summary.days = params.days;
    store.write_final_snapshot(graph);

    const auto ended = std::chrono::system_clock::now();
    const auto to_iso = [](std::chrono::system_clock::time_point tp) {
        const std::time_t t = std::chrono::system_clock::to_time_t(tp);
        char buf[32];
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return std::string(buf);
    };

    nlohmann::ordered_json manifest{
        {"run_id", store.run_id()},
        {"config", nlohmann::ordered_json::parse(config_snapshot_json)},
        {"code_version", "heatpoll 0.1.0"},
        {"started_at", to_iso(started)},
        {"ended_at", to_iso(ended)},
        {"provider_kind", provider.kind()},
        {"days", summary.days},
        {"agents", summary.agents},
        {"phase1_fallbacks", summary.phase1_fallbacks},
        {"phase2_fallbacks", summary.phase2_fallbacks},
    };
    store.write_manifest(manifest.dump(2) + "\n");
    return summary;
}

} // namespace heatpoll
