#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "globeprobe/catalog.hpp"
#include "globeprobe/errors.hpp"
#include "globeprobe/transcript.hpp"

namespace globeprobe {

enum class ProviderKind { LiveEndpoint, Scripted, Replay };

inline const char* provider_kind_name(ProviderKind k) {
    switch (k) {
        case ProviderKind::LiveEndpoint: return "live-endpoint";
        case ProviderKind::Scripted: return "scripted";
        case ProviderKind::Replay: return "replay";
    }
    return "?";
}

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Scripted;

    // live-endpoint
    std::string endpoint_url;       // full chat-completions URL
    std::string model_name;
    std::string auth_token_env_var;
    std::optional<double> temperature;
    int max_retries = 2;
    int requests_per_minute_cap = 60;

    // scripted
    std::string scripted_reply = "4";

    // replay
    std::filesystem::path replay_transcript;
    std::string replay_run_id;  // empty: the store must contain a single run

    void validate() const {
        if (max_retries < 0) throw ConfigError("provider: max_retries must be >= 0");
        if (requests_per_minute_cap < 1)
            throw ConfigError("provider: requests_per_minute_cap must be >= 1");
        if (kind == ProviderKind::LiveEndpoint) {
            if (endpoint_url.empty() || model_name.empty())
                throw ConfigError("live-endpoint provider requires endpoint_url and model_name");
        }
        if (kind == ProviderKind::Replay && replay_transcript.empty())
            throw ConfigError("replay provider requires a transcript source");
    }
};

/// Metadata travelling with each prompt; the replay provider keys on it.
struct PromptContext {
    int item_id = 0;
    Locale locale = Locale::EN;
    int repeat_index = 0;
    std::string prompt_text;
};

class Provider {
public:
    virtual ~Provider() = default;
    /// Send one prompt, return the provider's full text reply.
    virtual std::string complete(const PromptContext& ctx) = 0;
    virtual std::string kind_name() const = 0;
    virtual std::string model_name() const = 0;
};

/// Fixed-reply provider for tests and dry runs. An optional reply sequence
/// cycles per call.
class ScriptedProvider : public Provider {
public:
    explicit ScriptedProvider(std::string reply, std::string model = "scripted")
        : replies_{std::move(reply)}, model_(std::move(model)) {}
    explicit ScriptedProvider(std::vector<std::string> replies, std::string model = "scripted")
        : replies_(std::move(replies)), model_(std::move(model)) {
        if (replies_.empty()) throw ConfigError("scripted provider: empty reply list");
    }

    std::string complete(const PromptContext&) override {
        const std::string& r = replies_[next_ % replies_.size()];
        ++next_;
        return r;
    }
    std::string kind_name() const override { return "scripted"; }
    std::string model_name() const override { return model_; }
    size_t calls() const { return next_; }

private:
    std::vector<std::string> replies_;
    std::string model_;
    size_t next_ = 0;
};

/// Deterministic provider answering from a recorded transcript. Replies are
/// keyed by (item_id, repeat_index); each record is consumed exactly once.
class ReplayProvider : public Provider {
public:
    ReplayProvider(std::vector<TranscriptRecord> records, const std::string& run_id) {
        for (auto& r : records) {
            if (r.run_id != run_id) continue;
            model_ = r.model_name;
            by_key_.emplace(std::make_pair(r.item_id, r.repeat_index), std::move(r));
        }
        if (by_key_.empty())
            throw UnknownRunError("replay: run id '" + run_id + "' not present in transcript");
        run_id_ = run_id;
    }

    static std::unique_ptr<ReplayProvider> from_file(const std::filesystem::path& path,
                                                     std::string run_id = "") {
        auto records = TranscriptStore::read_all(path);
        if (records.empty()) throw DataError("replay: transcript is empty: " + path.string());
        if (run_id.empty()) {
            run_id = records.front().run_id;
            for (const auto& r : records)
                if (r.run_id != run_id)
                    throw DataError("replay: transcript holds several runs; pass a run id");
        }
        return std::make_unique<ReplayProvider>(std::move(records), run_id);
    }

    std::string complete(const PromptContext& ctx) override {
        auto it = by_key_.find(std::make_pair(ctx.item_id, ctx.repeat_index));
        if (it == by_key_.end())
            throw TranscriptExhaustedError(
                "replay: transcript exhausted at item " + std::to_string(ctx.item_id) +
                ", repeat " + std::to_string(ctx.repeat_index) + " of run '" + run_id_ + "'");
        const TranscriptRecord& rec = it->second;
        if (rec.locale != ctx.locale)
            throw LocaleMismatchError(std::string("replay: transcript was recorded with locale ") +
                                      locale_code(rec.locale) + " but the request is " +
                                      locale_code(ctx.locale));
        if (!ctx.prompt_text.empty() && rec.prompt_text != ctx.prompt_text)
            throw DataError("replay: recorded prompt for item " + std::to_string(ctx.item_id) +
                            " differs from the requested prompt");
        std::string reply = rec.raw_response;
        by_key_.erase(it);
        return reply;
    }

    std::string kind_name() const override { return "replay"; }
    std::string model_name() const override { return model_; }
    size_t remaining() const { return by_key_.size(); }

private:
    std::map<std::pair<int, int>, TranscriptRecord> by_key_;
    std::string run_id_;
    std::string model_;
};

}  // namespace globeprobe
