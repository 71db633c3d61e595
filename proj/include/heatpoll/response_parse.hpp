#pragma once

#include <optional>
#include <string>

#include "heatpoll/decision.hpp"

namespace heatpoll {

enum class ParseErrorKind { None, NoJsonFound, MissingKey, OutOfRange, UnknownFriend };

struct ParseError {
    ParseErrorKind kind = ParseErrorKind::None;
    std::string field;
    std::string message;
};

template <typename T>
struct Parsed {
    std::optional<T> value;
    ParseError error;
    bool ok() const { return value.has_value(); }
};

struct ParseLimits {
    int viable_min = 10;
    int viable_max = 32;
};

// First balanced {...} in the text that parses as JSON, if any. String
// literals and escapes are respected while scanning.
std::optional<std::string> extract_first_json(const std::string& text);

// Both parsers accept arbitrary bytes and never throw; every failure maps
// to a typed ParseError. Numeric fields are rounded half away from zero
// before range validation.
Parsed<Phase1Decision> parse_phase1(const std::string& text, const ParseLimits& limits = {});
Parsed<Phase2Decision> parse_phase2(const std::string& text, const ParseLimits& limits = {});

// Rejects closeness updates that name friends not present in the context.
std::optional<ParseError> validate_friend_names(const Phase2Decision& decision,
                                                const Phase2Context& ctx);

std::string phase1_decision_to_json(const Phase1Decision& d);
std::string phase2_decision_to_json(const Phase2Decision& d);

} // namespace heatpoll
