#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatpoll/graph.hpp"
#include "heatpoll/weather.hpp"

namespace heatpoll {

// Category -> [low, high] degC. Ranges are disjoint, contiguous and
// ascending Cold -> Hot.
class TemperatureReference {
public:
    struct Range {
        int low;
        int high;
    };

    // Defaults: Cold [10,16], Cool [17,19], Neutral [20,24], Warm [25,27],
    // Hot [28,32].
    TemperatureReference();
    TemperatureReference(std::array<Range, 5> ranges);

    const Range& range(HeaterPreference p) const {
        return ranges_[static_cast<std::size_t>(p)];
    }
    double midpoint(HeaterPreference p) const {
        const Range& r = range(p);
        return (r.low + r.high) / 2.0;
    }
    int viable_min() const { return ranges_.front().low; }
    int viable_max() const { return ranges_.back().high; }

private:
    std::array<Range, 5> ranges_;
};

struct FamilyMemberInfo {
    std::string name;
    HeaterPreference heater_preference = HeaterPreference::Neutral;
    std::string trait_summary;
};

struct Phase1Context {
    Persona persona;
    std::vector<FamilyMemberInfo> family; // other members, not the persona itself
    DailyWeather weather;
    std::optional<int> previous_final_temp; // absent on day 0 only
    TemperatureReference reference;
};

struct Phase1Decision {
    int degree_choice = 0;
    int happiness = 100;
    std::string reasoning;

    bool operator==(const Phase1Decision&) const = default;
};

struct FriendInfo {
    std::string name;
    int closeness = 1; // [1,5]
    double family_choice_today = 0.0;
    std::vector<int> last_three_suggestions; // newest last, length <= 3
};

struct Phase2Context {
    Persona persona; // a representative
    double family_average = 0.0;
    std::vector<FriendInfo> friends;
    DailyWeather weather;
    TemperatureReference reference;
};

struct Phase2Decision {
    int final_degree = 0;
    std::map<std::string, int> closeness_updates; // friend name -> [1,5]
    std::string reasoning;

    bool operator==(const Phase2Decision&) const = default;
};

struct Phase1Result {
    Phase1Decision decision;
    bool fallback = false;
};

struct Phase2Result {
    Phase2Decision decision;
    bool fallback = false;
};

// Decision backend. Implementations must be total for valid contexts and
// safe for concurrent calls across distinct agents within a phase.
class DecisionProvider {
public:
    virtual ~DecisionProvider() = default;
    virtual Phase1Result phase1(const Phase1Context& ctx) const = 0;
    virtual Phase2Result phase2(const Phase2Context& ctx) const = 0;
    virtual std::string kind() const = 0;
};

} // namespace heatpoll
