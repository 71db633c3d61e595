#include "heatpoll/network_builder.hpp"

#include <algorithm>

#include "heatpoll/karate_club.hpp"
#include "heatpoll/names.hpp"
#include "heatpoll/rounding.hpp"

namespace heatpoll {

void BuildConfig::validate() const {
    if (positive_trait_pct < 0.0 || positive_trait_pct > 1.0) {
        throw std::invalid_argument("positive_trait_pct must be in [0,1], got " +
                                    std::to_string(positive_trait_pct));
    }
    if (max_family_members < 0) {
        throw std::invalid_argument("max_family_members must be >= 0");
    }
    if (age_min_rep > age_max_rep || age_min_member > age_max_member) {
        throw std::invalid_argument("age range is inverted");
    }
    if (closeness_mode == InitialClosenessMode::Constant &&
        (constant_closeness < 1 || constant_closeness > 5)) {
        throw std::invalid_argument("constant_closeness must be in [1,5]");
    }
}

SocialGraph load_base_network(const BuildConfig& config) {
    config.validate();
    SocialGraph g;
    for (int id = 0; id < kKarateNodeCount; ++id) {
        Persona p;
        p.id = id;
        p.role = Role::FamilyRepresentative;
        p.family_id = id;
        g.add_node(std::move(p));
    }
    for (const WeightedEdge& e : karate_club_edges()) {
        const int closeness = config.closeness_mode == InitialClosenessMode::Constant
                                  ? config.constant_closeness
                                  : clamp_int(e.weight, 1, 5);
        g.add_edge(e.u, e.v, EdgeKind::Friend, closeness);
    }
    return g;
}

void expand_families(SocialGraph& graph, const BuildConfig& config, Rng& rng) {
    config.validate();
    for (const auto& [_, p] : graph.nodes()) {
        if (p.role == Role::FamilyMember) throw AlreadyExpanded();
    }
    const std::vector<int> reps = graph.node_ids();
    int next_id = reps.empty() ? 0 : reps.back() + 1;
    for (int rep : reps) {
        const int n = rng.uniform_int(0, config.max_family_members);
        std::vector<int> family{rep};
        for (int k = 0; k < n; ++k) {
            Persona member;
            member.id = next_id++;
            member.role = Role::FamilyMember;
            member.family_id = rep;
            family.push_back(member.id);
            graph.add_node(std::move(member));
        }
        for (std::size_t i = 0; i < family.size(); ++i) {
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                graph.add_edge(family[i], family[j], EdgeKind::Family);
            }
        }
    }
}

void assign_attributes(SocialGraph& graph, const BuildConfig& config, Rng& rng) {
    config.validate();
    const std::vector<std::string>& pool =
        config.name_pool.empty() ? default_name_pool() : config.name_pool;

    // Names are drawn without replacement; once the pool is exhausted the
    // node id is appended to keep names unique.
    std::vector<std::size_t> available(pool.size());
    for (std::size_t i = 0; i < available.size(); ++i) available[i] = i;

    for (int id : graph.node_ids()) {
        Persona& p = graph.persona(id);
        if (!available.empty()) {
            const std::size_t pick = rng.next_below(available.size());
            p.name = pool[available[pick]];
            available[pick] = available.back();
            available.pop_back();
        } else {
            p.name = pool[rng.next_below(pool.size())] + "-" + std::to_string(id);
        }
        p.age = p.role == Role::FamilyRepresentative
                    ? rng.uniform_int(config.age_min_rep, config.age_max_rep)
                    : rng.uniform_int(config.age_min_member, config.age_max_member);
        p.heater_preference = static_cast<HeaterPreference>(rng.next_below(5));
        for (std::size_t i = 0; i < kTraitCount; ++i) {
            p.traits.set_positive(static_cast<TraitDim>(i),
                                  rng.bernoulli(config.positive_trait_pct));
        }
        p.happiness = 100;
        p.last_choices.clear();
    }
}

SocialGraph build_network(const BuildConfig& config) {
    SocialGraph g = load_base_network(config);
    Rng rng(config.seed);
    expand_families(g, config, rng);
    assign_attributes(g, config, rng);
    return g;
}

} // namespace heatpoll
