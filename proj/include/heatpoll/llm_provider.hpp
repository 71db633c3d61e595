#pragma once

#include <atomic>
#include <string>

#include "heatpoll/decision.hpp"
#include "heatpoll/mock_provider.hpp"

namespace heatpoll {

struct LlmConfig {
    std::string base_url = "http://localhost:8000/v1";
    std::string model = "mistral";
    double temperature = 0.7;
    int timeout_s = 120;
    int max_retries = 3; // re-requests after the first attempt
    ParseLimits limits;
};

// Chat-completion client for any OpenAI-compatible endpoint. Sends the
// built prompt as a single user message, feeds the completion text
// through the response parser, re-requests on transport or parse
// failures, and falls back to the mock oracle once the retry budget is
// spent. A day is never aborted by a bad endpoint.
class LlmProvider : public DecisionProvider {
public:
    explicit LlmProvider(LlmConfig config);

    Phase1Result phase1(const Phase1Context& ctx) const override;
    Phase2Result phase2(const Phase2Context& ctx) const override;
    std::string kind() const override { return "llm"; }

    int requests_sent() const { return requests_.load(); }
    int fallbacks() const { return fallbacks_.load(); }

private:
    // One chat-completion round trip; empty optional on transport error
    // or malformed envelope.
    std::optional<std::string> complete(const std::string& prompt) const;

    LlmConfig config_;
    std::string host_;        // scheme://host[:port]
    std::string path_prefix_; // e.g. "/v1"
    MockProvider fallback_provider_;
    mutable std::atomic<int> requests_{0};
    mutable std::atomic<int> fallbacks_{0};
};

} // namespace heatpoll
