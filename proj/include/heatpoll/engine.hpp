#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatpoll/decision.hpp"
#include "heatpoll/graph.hpp"
#include "heatpoll/response_parse.hpp"
#include "heatpoll/weather.hpp"

namespace heatpoll {

class RunStore;

struct SimParams {
    int days = 30;
    double cost_constant = 1.0; // C in the daily cost
    ParseLimits viable;
    TemperatureReference reference;
    std::uint64_t seed = 0;
    double positive_trait_pct = 0.5; // recorded with every network day
    int threads = 1;                 // parallelism for provider calls within a phase
};

struct AgentPhase1Outcome {
    int degree_choice = 0;
    int happiness = 0;
    bool fallback = false;
    std::string reasoning;

    bool operator==(const AgentPhase1Outcome&) const = default;
};

struct AgentPhase2Outcome {
    int final_degree = 0;
    bool fallback = false;
    std::string reasoning;

    bool operator==(const AgentPhase2Outcome&) const = default;
};

struct DayOutcome {
    int day_index = 0;
    double temp_out = 0.0;
    std::map<int, double> family_averages; // family id -> one-decimal mean choice
    std::map<int, int> rep_suggestions;    // representative id -> final degree
    int building_setpoint = 0;
    double cost = 0.0;

    std::map<int, AgentPhase1Outcome> phase1; // every node
    std::map<int, AgentPhase2Outcome> phase2; // representatives

    bool operator==(const DayOutcome&) const = default;
};

// Overrides the processing order of phase loops; decision staging makes
// the outcome order-independent, which the tests assert.
struct DayOrdering {
    std::vector<int> family_order; // family ids for phase 1
    std::vector<int> rep_order;    // representative ids for phase 2
};

// Cost of holding `setpoint` against outside temperature: |set - out| * C.
double compute_cost(int setpoint, double temp_out, double cost_constant);

// One simulated day: family poll (phase 1), building poll (phase 2),
// setpoint/cost, history update. Mutates happiness, closeness and
// last_choices in the graph. Decisions within a phase are simultaneous:
// every context is built from the pre-phase state and all mutations are
// staged and applied afterwards in ascending id order.
DayOutcome run_day(SocialGraph& graph, const DailyWeather& weather,
                   const DecisionProvider& provider, const std::optional<DayOutcome>& prev,
                   const SimParams& params, const DayOrdering* ordering = nullptr);

struct RunSummary {
    int days = 0;
    std::size_t agents = 0;
    int phase1_fallbacks = 0;
    int phase2_fallbacks = 0;
    int building_setpoint_last = 0;
};

// Full run: one run_day per weather day, per-day records and snapshots
// into the store, manifest at the end.
RunSummary run_simulation(SocialGraph& graph, const std::vector<DailyWeather>& weather,
                          const DecisionProvider& provider, const SimParams& params,
                          RunStore& store, const std::string& config_snapshot_json);

} // namespace heatpoll
