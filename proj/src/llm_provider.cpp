#include "heatpoll/llm_provider.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "heatpoll/prompts.hpp"
#include "heatpoll/response_parse.hpp"

namespace heatpoll {

namespace {

using json = nlohmann::json;

// Splits "http://host:port/some/prefix" into host part and path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
    std::string url = base_url;
    while (!url.empty() && url.back() == '/') url.pop_back();
    const std::size_t scheme = url.find("://");
    const std::size_t path_start =
        scheme == std::string::npos ? url.find('/') : url.find('/', scheme + 3);
    if (path_start == std::string::npos) return {url, ""};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

LlmProvider::LlmProvider(LlmConfig config)
    : config_(std::move(config)),
      fallback_provider_(MockProvider::Options{config_.limits, false}) {
    std::tie(host_, path_prefix_) = split_base_url(config_.base_url);
}

std::optional<std::string> LlmProvider::complete(const std::string& prompt) const {
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout_s);
    client.set_read_timeout(config_.timeout_s);
    client.set_write_timeout(config_.timeout_s);

    const json body{
        {"model", config_.model},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        {"temperature", config_.temperature},
    };
    requests_.fetch_add(1);
    httplib::Result res = client.Post(path_prefix_ + "/chat/completions", body.dump(),
                                      "application/json");
    if (!res || res->status != 200) return std::nullopt;

    const json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded()) return std::nullopt;
    if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
        return std::nullopt;
    }
    const json& message = doc["choices"][0].value("message", json::object());
    if (!message.contains("content") || !message["content"].is_string()) return std::nullopt;
    return message["content"].get<std::string>();
}

Phase1Result LlmProvider::phase1(const Phase1Context& ctx) const {
    const std::string prompt = build_phase1_prompt(ctx);
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        const std::optional<std::string> content = complete(prompt);
        if (!content) continue;
        Parsed<Phase1Decision> parsed = parse_phase1(*content, config_.limits);
        if (parsed.ok()) return Phase1Result{std::move(*parsed.value), false};
    }
    fallbacks_.fetch_add(1);
    Phase1Result result = fallback_provider_.phase1(ctx);
    result.fallback = true;
    return result;
}

Phase2Result LlmProvider::phase2(const Phase2Context& ctx) const {
    const std::string prompt = build_phase2_prompt(ctx);
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        const std::optional<std::string> content = complete(prompt);
        if (!content) continue;
        Parsed<Phase2Decision> parsed = parse_phase2(*content, config_.limits);
        if (!parsed.ok()) continue;
        if (validate_friend_names(*parsed.value, ctx)) continue;
        return Phase2Result{std::move(*parsed.value), false};
    }
    fallbacks_.fetch_add(1);
    Phase2Result result = fallback_provider_.phase2(ctx);
    result.fallback = true;
    return result;
}

} // namespace heatpoll
