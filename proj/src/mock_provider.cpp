#include "heatpoll/mock_provider.hpp"

#include <cmath>
#include <sstream>

#include "heatpoll/rounding.hpp"

namespace heatpoll {

namespace {

bool is_assertive(const TraitProfile& t) { return t.is_positive(TraitDim::Assertiveness); }
bool is_selfless(const TraitProfile& t) { return t.is_positive(TraitDim::Altruism); }
bool is_cooperative(const TraitProfile& t) { return t.is_positive(TraitDim::Compliance); }
bool is_easygoing(const TraitProfile& t) { return t.is_positive(TraitDim::AngryHostility); }

} // namespace

Phase1Result MockProvider::phase1(const Phase1Context& ctx) const {
    const TraitProfile& traits = ctx.persona.traits;
    const double own_mid = ctx.reference.midpoint(ctx.persona.heater_preference);

    double family_mid = own_mid;
    if (!ctx.family.empty()) {
        double sum = 0.0;
        for (const FamilyMemberInfo& m : ctx.family) {
            sum += ctx.reference.midpoint(m.heater_preference);
        }
        family_mid = sum / static_cast<double>(ctx.family.size());
    }

    double target;
    if (is_assertive(traits)) {
        target = own_mid;
    } else if (is_selfless(traits) || is_cooperative(traits)) {
        target = (own_mid + family_mid) / 2.0;
    } else {
        target = 0.75 * own_mid + 0.25 * family_mid;
    }

    Phase1Decision d;
    d.degree_choice = clamp_int(round_half_away(target), options_.limits.viable_min,
                                options_.limits.viable_max);
    if (!ctx.previous_final_temp) {
        d.happiness = 100;
    } else {
        const double gap = std::abs(own_mid - *ctx.previous_final_temp);
        double h = 100.0 - 2.0 * gap;
        if (!is_easygoing(traits) && gap > 3.0) h -= 5.0;
        d.happiness = clamp_int(round_half_away(h), 1, 100);
    }

    std::ostringstream reason;
    reason << "Preference midpoint " << own_mid << ", family midpoint " << family_mid
           << "; settled on " << d.degree_choice << ".";
    d.reasoning = reason.str();
    return Phase1Result{std::move(d), false};
}

Phase2Result MockProvider::phase2(const Phase2Context& ctx) const {
    const TraitProfile& traits = ctx.persona.traits;
    const double own_mid = ctx.reference.midpoint(ctx.persona.heater_preference);

    double w_own, w_family, w_friends;
    if (is_assertive(traits)) {
        w_own = 0.6;
        w_family = 0.2;
        w_friends = 0.2;
    } else if (is_selfless(traits)) {
        w_own = 0.2;
        w_family = 0.4;
        w_friends = 0.4;
    } else {
        w_own = 0.4;
        w_family = 0.3;
        w_friends = 0.3;
    }

    // Closeness-weighted mean of friends' most recent suggestions; friends
    // with no history yet are skipped.
    double weight_sum = 0.0;
    double signal_sum = 0.0;
    for (const FriendInfo& f : ctx.friends) {
        if (f.last_three_suggestions.empty()) continue;
        signal_sum += static_cast<double>(f.closeness) * f.last_three_suggestions.back();
        weight_sum += static_cast<double>(f.closeness);
    }

    double target;
    if (weight_sum > 0.0) {
        const double friend_signal = signal_sum / weight_sum;
        target = w_own * own_mid + w_family * ctx.family_average + w_friends * friend_signal;
    } else {
        target = w_own * own_mid + (w_family + w_friends) * ctx.family_average;
    }

    Phase2Decision d;
    d.final_degree = clamp_int(round_half_away(target), options_.limits.viable_min,
                               options_.limits.viable_max);

    for (const FriendInfo& f : ctx.friends) {
        if (f.last_three_suggestions.empty()) continue;
        const int gap = std::abs(f.last_three_suggestions.back() - d.final_degree);
        int delta = 0;
        if (gap <= 1) delta = 1;
        else if (gap >= 3) delta = -1;
        if (options_.trait_closeness_bias) {
            if (is_easygoing(traits) && is_cooperative(traits)) delta += 1;
            else if (!is_easygoing(traits) && !is_cooperative(traits)) delta -= 1;
            delta = clamp_int(delta, -1, 1);
        }
        const int updated = clamp_int(f.closeness + delta, 1, 5);
        if (updated != f.closeness) d.closeness_updates[f.name] = updated;
    }

    std::ostringstream reason;
    reason << "Weighted own " << w_own << ", family " << w_family << ", friends " << w_friends
           << "; final " << d.final_degree << ".";
    d.reasoning = reason.str();
    return Phase2Result{std::move(d), false};
}

} // namespace heatpoll
