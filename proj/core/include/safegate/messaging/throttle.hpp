#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>

namespace safegate::messaging {

enum class ThrottleDecision { Dispatch, Suppress };

inline constexpr std::int64_t kDefaultNotifyIntervalMs = 180'000;

/// First notification per key is immediate; later ones only once `interval` has
/// elapsed since the last dispatched one. Keys are usually camera ids.
class Throttle {
public:
    explicit Throttle(std::int64_t interval_ms = kDefaultNotifyIntervalMs);

    ThrottleDecision decide(const std::string& key, std::int64_t now_ms);
    [[nodiscard]] std::int64_t interval_ms() const { return interval_ms_; }
    void reset();

private:
    std::int64_t interval_ms_;
    std::mutex mutex_;
    std::map<std::string, std::int64_t> last_dispatch_;
};

}  // namespace safegate::messaging
