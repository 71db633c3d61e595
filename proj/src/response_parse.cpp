#include "heatpoll/response_parse.hpp"

#include <charconv>
#include <cmath>

#include <nlohmann/json.hpp>

#include "heatpoll/rounding.hpp"

namespace heatpoll {

namespace {

using json = nlohmann::json;

// Balanced-brace scan starting at `start` (which must index a '{').
// Returns one past the matching '}', or npos if unbalanced.
std::size_t find_balanced_end(const std::string& text, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (escaped) escaped = false;
            else if (c == '\\') escaped = true;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') ++depth;
        else if (c == '}') {
            if (--depth == 0) return i + 1;
        }
    }
    return std::string::npos;
}

// Reads a numeric field. Accepts JSON numbers and numeric strings, rounds
// half away from zero.
std::optional<double> as_number(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        double parsed = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
        if (ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(parsed)) {
            return parsed;
        }
    }
    return std::nullopt;
}

std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    return std::to_string(v);
}

struct FieldReader {
    const json& doc;
    ParseError error;

    bool read_int(const char* key, int lo, int hi, int& out) {
        if (!doc.contains(key)) {
            error = {ParseErrorKind::MissingKey, key, std::string("missing key '") + key + "'"};
            return false;
        }
        const std::optional<double> num = as_number(doc.at(key));
        if (!num) {
            error = {ParseErrorKind::MissingKey, key,
                     std::string("key '") + key + "' is not a number"};
            return false;
        }
        const int rounded = round_half_away(*num);
        if (rounded < lo || rounded > hi) {
            error = {ParseErrorKind::OutOfRange, key,
                     std::string(key) + " " + format_value(*num) + " outside [" +
                         std::to_string(lo) + "," + std::to_string(hi) + "]"};
            return false;
        }
        out = rounded;
        return true;
    }

    bool read_string(const char* key, std::string& out) {
        if (!doc.contains(key) || !doc.at(key).is_string()) {
            error = {ParseErrorKind::MissingKey, key, std::string("missing key '") + key + "'"};
            return false;
        }
        out = doc.at(key).get<std::string>();
        return true;
    }
};

std::optional<json> first_json_object(const std::string& text) {
    std::size_t pos = text.find('{');
    while (pos != std::string::npos) {
        const std::size_t end = find_balanced_end(text, pos);
        if (end != std::string::npos) {
            json doc = json::parse(text.begin() + pos, text.begin() + end, nullptr, false);
            if (!doc.is_discarded() && doc.is_object()) return doc;
        }
        pos = text.find('{', pos + 1);
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> extract_first_json(const std::string& text) {
    std::size_t pos = text.find('{');
    while (pos != std::string::npos) {
        const std::size_t end = find_balanced_end(text, pos);
        if (end != std::string::npos) {
            const json doc = json::parse(text.begin() + pos, text.begin() + end, nullptr, false);
            if (!doc.is_discarded() && doc.is_object()) return text.substr(pos, end - pos);
        }
        pos = text.find('{', pos + 1);
    }
    return std::nullopt;
}

Parsed<Phase1Decision> parse_phase1(const std::string& text, const ParseLimits& limits) {
    Parsed<Phase1Decision> out;
    const std::optional<json> doc = first_json_object(text);
    if (!doc) {
        out.error = {ParseErrorKind::NoJsonFound, "", "no JSON object found in response"};
        return out;
    }
    Phase1Decision d;
    FieldReader reader{*doc, {}};
    if (!reader.read_int("degree", limits.viable_min, limits.viable_max, d.degree_choice) ||
        !reader.read_int("happiness", 1, 100, d.happiness) ||
        !reader.read_string("reasoning", d.reasoning)) {
        out.error = reader.error;
        return out;
    }
    out.value = std::move(d);
    return out;
}

Parsed<Phase2Decision> parse_phase2(const std::string& text, const ParseLimits& limits) {
    Parsed<Phase2Decision> out;
    const std::optional<json> doc = first_json_object(text);
    if (!doc) {
        out.error = {ParseErrorKind::NoJsonFound, "", "no JSON object found in response"};
        return out;
    }
    Phase2Decision d;
    FieldReader reader{*doc, {}};
    if (!reader.read_int("final_degree", limits.viable_min, limits.viable_max, d.final_degree) ||
        !reader.read_string("reasoning", d.reasoning)) {
        out.error = reader.error;
        return out;
    }
    if (!doc->contains("closeness_updates") || !doc->at("closeness_updates").is_object()) {
        out.error = {ParseErrorKind::MissingKey, "closeness_updates",
                     "missing key 'closeness_updates'"};
        return out;
    }
    for (const auto& [name, value] : doc->at("closeness_updates").items()) {
        const std::optional<double> num = as_number(value);
        if (!num) {
            out.error = {ParseErrorKind::OutOfRange, "closeness_updates." + name,
                         "closeness for '" + name + "' is not a number"};
            return out;
        }
        const int rounded = round_half_away(*num);
        if (rounded < 1 || rounded > 5) {
            out.error = {ParseErrorKind::OutOfRange, "closeness_updates." + name,
                         "closeness " + format_value(*num) + " for '" + name + "' outside [1,5]"};
            return out;
        }
        d.closeness_updates[name] = rounded;
    }
    out.value = std::move(d);
    return out;
}

std::optional<ParseError> validate_friend_names(const Phase2Decision& decision,
                                                const Phase2Context& ctx) {
    for (const auto& [name, _] : decision.closeness_updates) {
        bool known = false;
        for (const FriendInfo& f : ctx.friends) {
            if (f.name == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            return ParseError{ParseErrorKind::UnknownFriend, "closeness_updates." + name,
                              "closeness update for unknown friend '" + name + "'"};
        }
    }
    return std::nullopt;
}

std::string phase1_decision_to_json(const Phase1Decision& d) {
    nlohmann::ordered_json j{{"reasoning", d.reasoning},
                             {"degree", d.degree_choice},
                             {"happiness", d.happiness}};
    return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string phase2_decision_to_json(const Phase2Decision& d) {
    nlohmann::ordered_json updates = nlohmann::ordered_json::object();
    for (const auto& [name, v] : d.closeness_updates) updates[name] = v;
    nlohmann::ordered_json j{{"reasoning", d.reasoning},
                             {"final_degree", d.final_degree},
                             {"closeness_updates", std::move(updates)}};
    return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

} // namespace heatpoll
