#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heatpoll {

// The nine personality dimensions carried by every persona. Each holds
// either the positive or the negative adjective of its pair.
enum class TraitDim : std::size_t {
    AngryHostility = 0,
    Impulsiveness,
    Assertiveness,
    Feelings,
    Altruism,
    Compliance,
    Deliberation,
    Environmentalism,
    Frugality,
};

inline constexpr std::size_t kTraitCount = 9;

struct TraitInfo {
    std::string_view key;      // snake_case identifier used in files
    std::string_view positive; // adjective for the positive pole
    std::string_view negative;
};

inline constexpr std::array<TraitInfo, kTraitCount> kTraitTable = {{
    {"angry_hostility", "Easygoing", "Easily-angered"},
    {"impulsiveness", "Self-controlled", "Impulsive"},
    {"assertiveness", "Assertive", "Passive"},
    {"feelings", "Emotional", "Unemotional"},
    {"altruism", "Selfless", "Selfish"},
    {"compliance", "Cooperative", "Uncooperative"},
    {"deliberation", "Cautious", "Careless"},
    {"environmentalism", "Environmentalist", "Not environmentalist"},
    {"frugality", "Frugal", "Wasteful"},
}};

inline const TraitInfo& trait_info(TraitDim d) {
    return kTraitTable[static_cast<std::size_t>(d)];
}

// One adjective per dimension, stored as the polarity flag.
class TraitProfile {
public:
    TraitProfile() { positive_.fill(true); }

    bool is_positive(TraitDim d) const { return positive_[static_cast<std::size_t>(d)]; }
    void set_positive(TraitDim d, bool v) { positive_[static_cast<std::size_t>(d)] = v; }

    std::string_view adjective(TraitDim d) const {
        const TraitInfo& info = trait_info(d);
        return is_positive(d) ? info.positive : info.negative;
    }

    // Inverse of adjective(): classify an adjective back to its polarity.
    static bool polarity_of(TraitDim d, std::string_view adjective) {
        const TraitInfo& info = trait_info(d);
        if (adjective == info.positive) return true;
        if (adjective == info.negative) return false;
        throw std::invalid_argument("unknown adjective '" + std::string(adjective) +
                                    "' for trait " + std::string(info.key));
    }

    bool operator==(const TraitProfile&) const = default;

private:
    std::array<bool, kTraitCount> positive_;
};

} // namespace heatpoll
