#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>

#include "globeprobe/errors.hpp"

namespace globeprobe {

/// Sliding-window limiter: over any 60-second window at most `cap` calls are
/// admitted. Shared by all workers of a survey run; the clock and the sleep
/// hook are injectable for tests.
class RateLimiter {
public:
    using clock = std::chrono::steady_clock;
    using time_point = clock::time_point;
    using duration = clock::duration;

    explicit RateLimiter(int cap_per_minute,
                         std::function<time_point()> now = [] { return clock::now(); },
                         std::function<void(duration)> sleep_for =
                             [](duration d) { std::this_thread::sleep_for(d); })
        : cap_(cap_per_minute), now_(std::move(now)), sleep_(std::move(sleep_for)) {
        if (cap_ < 1) throw ConfigError("rate limiter: cap must be >= 1");
    }

    /// Block until a call may be issued, or throw RateLimitError when the
    /// wait would exceed `max_wait`.
    void acquire(duration max_wait = std::chrono::minutes(5)) {
        duration waited{0};
        while (true) {
            duration needed{0};
            {
                std::lock_guard<std::mutex> lock(mu_);
                const time_point t = now_();
                prune(t);
                if (static_cast<int>(window_.size()) < cap_) {
                    window_.push_back(t);
                    return;
                }
                needed = window_.front() + std::chrono::seconds(60) - t;
            }
            if (needed <= duration{0}) continue;
            if (waited + needed > max_wait)
                throw RateLimitError("rate limit: request cannot be admitted within deadline");
            sleep_(needed);
            waited += needed;
        }
    }

    int cap() const { return cap_; }

private:
    void prune(time_point t) {
        const time_point horizon = t - std::chrono::seconds(60);
        while (!window_.empty() && window_.front() <= horizon) window_.pop_front();
    }

    int cap_;
    std::function<time_point()> now_;
    std::function<void(duration)> sleep_;
    std::mutex mu_;
    std::deque<time_point> window_;
};

}  // namespace globeprobe
