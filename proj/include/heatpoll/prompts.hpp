#pragma once

#include <string>

#include "heatpoll/decision.hpp"

namespace heatpoll {

// Both builders are pure: identical contexts produce byte-identical text.
std::string build_phase1_prompt(const Phase1Context& ctx);
std::string build_phase2_prompt(const Phase2Context& ctx);

// Comma-joined list of the persona's nine adjectives.
std::string trait_summary(const TraitProfile& traits);

} // namespace heatpoll
