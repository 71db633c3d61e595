#pragma once

#include "heatpoll/decision.hpp"
#include "heatpoll/response_parse.hpp"

namespace heatpoll {

// Deterministic rule oracle standing in for the LLM. A pure function of
// the context: no state, no randomness.
class MockProvider : public DecisionProvider {
public:
    struct Options {
        ParseLimits limits;
        // When set, closeness updates lean +1 for easygoing cooperative
        // agents and -1 for easily-angered uncooperative ones.
        bool trait_closeness_bias = false;
    };

    MockProvider() = default;
    explicit MockProvider(Options options) : options_(options) {}

    Phase1Result phase1(const Phase1Context& ctx) const override;
    Phase2Result phase2(const Phase2Context& ctx) const override;
    std::string kind() const override { return "mock"; }

private:
    Options options_;
};

} // namespace heatpoll
