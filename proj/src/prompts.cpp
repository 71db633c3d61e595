#include "heatpoll/prompts.hpp"

#include <sstream>

#include "heatpoll/rounding.hpp"

namespace heatpoll {

std::string trait_summary(const TraitProfile& traits) {
    std::string out;
    for (std::size_t i = 0; i < kTraitCount; ++i) {
        if (i > 0) out += ", ";
        out += traits.adjective(static_cast<TraitDim>(i));
    }
    return out;
}

namespace {

void append_reference_table(std::ostringstream& os, const TemperatureReference& ref) {
    os << "Heater preference reference table (degrees Celsius):\n";
    for (std::size_t i = 0; i < kPreferenceNames.size(); ++i) {
        const auto p = static_cast<HeaterPreference>(i);
        const auto& r = ref.range(p);
        os << "- " << kPreferenceNames[i] << ": " << r.low << " to " << r.high << "\n";
    }
}

} // namespace

std::string build_phase1_prompt(const Phase1Context& ctx) {
    const Persona& me = ctx.persona;
    std::ostringstream os;

    os << "You are " << me.name << ", a " << me.age
       << "-year-old resident of an apartment building with central heating. "
       << "Your personality: " << trait_summary(me.traits) << ". "
       << "Stay in character and decide as this person would.\n\n";

    os << "Today your family votes on the temperature to request for the building's heater. "
       << "Consider each of these factors:\n"
       << "1. Your own heater preference: " << to_string(me.heater_preference) << ".\n"
       << "2. Your family members' preferences.\n"
       << "3. The weather outside.\n"
       << "4. Your personality traits.\n\n";

    if (ctx.family.empty()) {
        os << "You live alone, so only your own preference matters for this step.\n";
    } else {
        os << "Your family members:\n";
        for (const FamilyMemberInfo& m : ctx.family) {
            os << "- " << m.name << ": prefers " << to_string(m.heater_preference) << " ("
               << m.trait_summary << ")\n";
        }
    }
    os << "\nYour current happiness level: " << me.happiness << " (scale 1-100).\n";
    os << "Weather: the temperature outside today is " << round_half_away(ctx.weather.temp_out)
       << " degrees Celsius.\n";
    if (ctx.previous_final_temp) {
        os << "Yesterday the building temperature was finally set to " << *ctx.previous_final_temp
           << " degrees Celsius.\n";
    }
    os << "\n";
    append_reference_table(os, ctx.reference);

    os << "\nYour tasks:\n"
       << "1. Choose the degree you will request today (an integer, degrees Celsius).\n";
    if (ctx.previous_final_temp) {
        os << "2. Update your happiness level (1-100) with respect to your previous day's "
              "choice and the final temperature set in the building yesterday.\n";
    } else {
        os << "2. Report your happiness level (1-100); no building temperature has been set "
              "yet, so keep your current level unless you have a reason not to.\n";
    }

    os << "\nExample output:\n"
       << R"({"reasoning": "I am easygoing and my family prefers warmth, so I meet them halfway.", "degree": 22, "happiness": 90})"
       << "\n\nRespond with a single JSON object containing exactly the keys \"reasoning\", "
          "\"degree\" and \"happiness\". Output only the JSON object, nothing else.\n";
    return os.str();
}

std::string build_phase2_prompt(const Phase2Context& ctx) {
    const Persona& me = ctx.persona;
    std::ostringstream os;

    os << "You are " << me.name << ", a " << me.age
       << "-year-old family representative in an apartment building with central heating. "
       << "Your personality: " << trait_summary(me.traits) << ". "
       << "Stay in character and decide as this person would.\n\n";

    os << "Your family has agreed on its average temperature request, and now you cast the "
          "family's vote in the building-wide poll. The building temperature will be the "
          "average of all representatives' votes.\n\n";

    if (ctx.friends.empty()) {
        os << "You have no friends in the building, so only your own preference and your "
              "family's request matter.\n";
    } else {
        os << "Your closeness level with each friend (scale 1-5):\n";
        for (const FriendInfo& f : ctx.friends) {
            os << "- " << f.name << ": " << f.closeness << "\n";
        }
        os << "\nEach friend's family degree choice for today:\n";
        for (const FriendInfo& f : ctx.friends) {
            os << "- " << f.name << ": " << f.family_choice_today << " degrees\n";
        }
        os << "\nEach friend's degree suggestions for the last three days:\n";
        for (const FriendInfo& f : ctx.friends) {
            os << "- " << f.name << ": ";
            if (f.last_three_suggestions.empty()) {
                os << "none yet";
            } else {
                for (std::size_t i = 0; i < f.last_three_suggestions.size(); ++i) {
                    if (i > 0) os << ", ";
                    os << f.last_three_suggestions[i];
                }
            }
            os << "\n";
        }
    }

    os << "\nYour own heater preference: " << to_string(me.heater_preference) << ".\n"
       << "Your family's average degree choice today: " << ctx.family_average << " degrees.\n"
       << "Weather: the temperature outside today is " << round_half_away(ctx.weather.temp_out)
       << " degrees Celsius.\n\n";
    append_reference_table(os, ctx.reference);

    os << "\nYour tasks:\n"
       << "1. Decide the final degree you submit to the building poll (an integer, degrees "
          "Celsius).\n"
       << "2. You may update your closeness level (1-5) with any of the friends listed above, "
          "for example moving closer to friends whose choices align with yours.\n";

    os << "\nExample output:\n"
       << R"({"reasoning": "Kim suggests nearly the same degree as my family, so we grow closer.", "final_degree": 22, "closeness_updates": {"Kim": 4}})"
       << "\n\nRespond with a single JSON object containing exactly the keys \"reasoning\", "
          "\"final_degree\" and \"closeness_updates\"";
    if (ctx.friends.empty()) {
        os << " (closeness_updates must be {})";
    }
    os << ". Output only the JSON object, nothing else.\n";
    return os.str();
}

} // namespace heatpoll
