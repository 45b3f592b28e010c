#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "globeprobe/catalog.hpp"
#include "globeprobe/errors.hpp"

namespace globeprobe {

/// One prompt/reply exchange, as persisted in the line-delimited transcript.
struct TranscriptRecord {
    std::string run_id;
    int item_id = 0;
    Locale locale = Locale::EN;
    int repeat_index = 0;
    std::string timestamp;  // ISO-8601 UTC
    std::string prompt_text;
    std::string raw_response;
    std::optional<int> parsed_value;
    std::string provider_kind;
    std::string model_name;

    void validate() const {
        if (run_id.empty()) throw DataError("transcript record: empty run_id");
        if (item_id < 1 || item_id > kItemCount)
            throw DataError("transcript record: item_id out of range");
        if (repeat_index < 0) throw DataError("transcript record: negative repeat_index");
        if (parsed_value && (*parsed_value < 1 || *parsed_value > 7))
            throw DataError("transcript record: parsed_value outside 1..7");
    }
};

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

// Field names and their order are part of the on-disk schema.
inline nlohmann::ordered_json record_to_json(const TranscriptRecord& r) {
    nlohmann::ordered_json j;
    j["run_id"] = r.run_id;
    j["item_id"] = r.item_id;
    j["locale"] = locale_code(r.locale);
    j["repeat_index"] = r.repeat_index;
    j["timestamp"] = r.timestamp;
    j["prompt_text"] = r.prompt_text;
    j["raw_response"] = r.raw_response;
    if (r.parsed_value)
        j["parsed_value"] = *r.parsed_value;
    else
        j["parsed_value"] = nullptr;
    j["provider_kind"] = r.provider_kind;
    j["model_name"] = r.model_name;
    return j;
}

inline TranscriptRecord record_from_json(const nlohmann::json& j, size_t line_no) {
    try {
        TranscriptRecord r;
        r.run_id = j.at("run_id").get<std::string>();
        r.item_id = j.at("item_id").get<int>();
        r.locale = parse_locale(j.at("locale").get<std::string>());
        r.repeat_index = j.at("repeat_index").get<int>();
        r.timestamp = j.at("timestamp").get<std::string>();
        r.prompt_text = j.at("prompt_text").get<std::string>();
        r.raw_response = j.at("raw_response").get<std::string>();
        if (!j.at("parsed_value").is_null()) r.parsed_value = j.at("parsed_value").get<int>();
        r.provider_kind = j.at("provider_kind").get<std::string>();
        r.model_name = j.at("model_name").get<std::string>();
        r.validate();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("transcript line " + std::to_string(line_no) +
                        ": invalid record: " + e.what());
    }
}

}  // namespace detail

/// Append-only transcript of survey exchanges, one JSON record per line,
/// flushed after every append. Existing records are loaded on open so that
/// appends resume where a previous run stopped.
class TranscriptStore {
public:
    using Key = std::tuple<std::string, int, int>;  // run_id, item_id, repeat_index

    explicit TranscriptStore(std::filesystem::path path) : path_(std::move(path)) {
        if (std::filesystem::exists(path_)) {
            records_ = read_all(path_);
            for (size_t i = 0; i < records_.size(); ++i) index_[key_of(records_[i])] = i;
        }
        out_.open(path_, std::ios::app | std::ios::binary);
        if (!out_) throw DataError("cannot open transcript for append: " + path_.string());
    }

    // appends from concurrent workers serialize here; the file sees whole
    // lines only and readers observe a prefix
    void append(const TranscriptRecord& r) {
        r.validate();
        std::lock_guard<std::mutex> lock(write_mu_);
        const Key k = key_of(r);
        if (index_.count(k))
            throw DuplicateRecordError("duplicate transcript record (" + r.run_id + ", item " +
                                       std::to_string(r.item_id) + ", repeat " +
                                       std::to_string(r.repeat_index) + ")");
        out_ << detail::record_to_json(r).dump() << '\n';
        out_.flush();
        if (!out_) throw DataError("transcript write failed: " + path_.string());
        index_[k] = records_.size();
        records_.push_back(r);
    }

    size_t size() const { return records_.size(); }
    const std::vector<TranscriptRecord>& records() const { return records_; }

    const TranscriptRecord* find(const std::string& run_id, int item_id, int repeat_index) const {
        auto it = index_.find(Key{run_id, item_id, repeat_index});
        return it == index_.end() ? nullptr : &records_[it->second];
    }

    static std::vector<TranscriptRecord> read_all(const std::filesystem::path& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw DataError("cannot open transcript: " + path.string());
        std::vector<TranscriptRecord> out;
        std::string line;
        size_t line_no = 0;
        while (std::getline(f, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw DataError("transcript line " + std::to_string(line_no) +
                                ": not valid JSON: " + e.what());
            }
            out.push_back(detail::record_from_json(j, line_no));
        }
        return out;
    }

private:
    static Key key_of(const TranscriptRecord& r) {
        return Key{r.run_id, r.item_id, r.repeat_index};
    }

    std::filesystem::path path_;
    std::ofstream out_;
    std::mutex write_mu_;
    std::vector<TranscriptRecord> records_;
    std::map<Key, size_t> index_;
};

}  // namespace globeprobe
