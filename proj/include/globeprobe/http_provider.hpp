#pragma once

#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "globeprobe/errors.hpp"
#include "globeprobe/provider.hpp"
#include "globeprobe/rate_limiter.hpp"

namespace globeprobe {

struct HttpReply {
    bool transport_ok = false;  // false: connection-level failure
    int status = 0;
    std::string body;
    std::string error;
};

/// Chat-completions client for a live endpoint. The HTTP transport and the
/// backoff sleep are injectable so retry behavior is testable offline.
class HttpChatProvider : public Provider {
public:
    using Transport = std::function<HttpReply(const std::string& url, const std::string& body,
                                              const std::string& bearer_token)>;
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit HttpChatProvider(ProviderConfig cfg, std::shared_ptr<RateLimiter> limiter = nullptr,
                              Transport transport = {}, Sleeper sleeper = {})
        : cfg_(std::move(cfg)),
          limiter_(std::move(limiter)),
          transport_(std::move(transport)),
          sleeper_(std::move(sleeper)) {
        cfg_.validate();
        if (cfg_.kind != ProviderKind::LiveEndpoint)
            throw ConfigError("HttpChatProvider requires a live-endpoint config");
        if (!cfg_.auth_token_env_var.empty()) {
            const char* tok = std::getenv(cfg_.auth_token_env_var.c_str());
            if (tok == nullptr || *tok == '\0')
                throw AuthError("auth token environment variable '" + cfg_.auth_token_env_var +
                                "' is not set");
            token_ = tok;
        }
        if (!limiter_) limiter_ = std::make_shared<RateLimiter>(cfg_.requests_per_minute_cap);
        if (!transport_) transport_ = default_transport();
        if (!sleeper_)
            sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    }

    std::string complete(const PromptContext& ctx) override {
        nlohmann::ordered_json body;
        body["model"] = cfg_.model_name;
        body["messages"] = nlohmann::json::array(
            {nlohmann::ordered_json{{"role", "user"}, {"content", ctx.prompt_text}}});
        if (cfg_.temperature) body["temperature"] = *cfg_.temperature;
        const std::string payload = body.dump();

        std::string last_error;
        for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
            if (attempt > 0) sleeper_(std::chrono::milliseconds(250) * (1 << (attempt - 1)));
            limiter_->acquire();
            const HttpReply reply = transport_(cfg_.endpoint_url, payload, token_);

            if (!reply.transport_ok) {
                last_error = reply.error.empty() ? "connection failed" : reply.error;
                continue;  // transient
            }
            if (reply.status == 401 || reply.status == 403)
                throw AuthError("provider rejected credentials (HTTP " +
                                std::to_string(reply.status) + ")");
            if (reply.status == 429 || reply.status >= 500) {
                last_error = "HTTP " + std::to_string(reply.status);
                continue;  // transient
            }
            if (reply.status != 200)
                throw TransportError("provider returned HTTP " + std::to_string(reply.status) +
                                     ": " + reply.body.substr(0, 200));
            return extract_content(reply.body);
        }
        throw TransportExhaustedError("provider unreachable after " +
                                      std::to_string(cfg_.max_retries + 1) +
                                      " attempts; last error: " + last_error);
    }

    std::string kind_name() const override { return "live-endpoint"; }
    std::string model_name() const override { return cfg_.model_name; }

private:
    static std::string extract_content(const std::string& body) {
        try {
            const nlohmann::json j = nlohmann::json::parse(body);
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw TransportError(std::string("malformed provider response: ") + e.what());
        }
    }

    Transport default_transport() {
        return [](const std::string& url, const std::string& body,
                  const std::string& token) -> HttpReply {
            const auto scheme_end = url.find("://");
            if (scheme_end == std::string::npos)
                throw ConfigError("endpoint_url must be a full URL: " + url);
            const auto path_start = url.find('/', scheme_end + 3);
            const std::string origin =
                path_start == std::string::npos ? url : url.substr(0, path_start);
            const std::string path =
                path_start == std::string::npos ? "/" : url.substr(path_start);

            httplib::Client client(origin);
            client.set_connection_timeout(15, 0);
            client.set_read_timeout(120, 0);
            httplib::Headers headers;
            if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
            const auto res = client.Post(path, headers, body, "application/json");
            HttpReply out;
            if (!res) {
                out.transport_ok = false;
                out.error = httplib::to_string(res.error());
                return out;
            }
            out.transport_ok = true;
            out.status = res->status;
            out.body = res->body;
            return out;
        };
    }

    ProviderConfig cfg_;
    std::string token_;
    std::shared_ptr<RateLimiter> limiter_;
    Transport transport_;
    Sleeper sleeper_;
};

/// Provider factory for a validated config.
inline std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
        case ProviderKind::Scripted:
            return std::make_unique<ScriptedProvider>(cfg.scripted_reply);
        case ProviderKind::Replay:
            return ReplayProvider::from_file(cfg.replay_transcript, cfg.replay_run_id);
        case ProviderKind::LiveEndpoint:
            return std::make_unique<HttpChatProvider>(cfg);
    }
    throw ConfigError("unknown provider kind");
}

}  // namespace globeprobe
