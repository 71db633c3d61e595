#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatpoll/graph.hpp"
#include "heatpoll/rng.hpp"

namespace heatpoll {

enum class InitialClosenessMode { FromBaseWeightsClamped, Constant };

struct BuildConfig {
    std::uint64_t seed = 0;
    double positive_trait_pct = 0.5; // in [0,1]
    int max_family_members = 4;
    std::vector<std::string> name_pool; // empty -> built-in pool
    int age_min_rep = 25;
    int age_max_rep = 75;
    int age_min_member = 10;
    int age_max_member = 80;
    InitialClosenessMode closeness_mode = InitialClosenessMode::FromBaseWeightsClamped;
    int constant_closeness = 3;

    void validate() const;
};

struct AlreadyExpanded : std::runtime_error {
    AlreadyExpanded() : std::runtime_error("graph already contains family members") {}
};

// The embedded Zachary karate club graph: 34 representatives, 78 friend
// edges. Closeness per the config's mode (original weights clamped into
// [1,5], or a constant).
SocialGraph load_base_network(const BuildConfig& config = {});

// Adds n_r family members per representative, n_r drawn uniformly from
// {0..max_family_members}, each family forming a complete family-edge
// subgraph. Draws happen in ascending representative id.
void expand_families(SocialGraph& graph, const BuildConfig& config, Rng& rng);

// Assigns name, age, heater preference and the nine trait adjectives to
// every node, in ascending node id. Happiness starts at 100.
void assign_attributes(SocialGraph& graph, const BuildConfig& config, Rng& rng);

// Full pipeline: base network, expansion, attributes, one seeded
// generator in that draw order.
SocialGraph build_network(const BuildConfig& config);

} // namespace heatpoll
