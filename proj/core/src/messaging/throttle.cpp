#include "safegate/messaging/throttle.hpp"

#include "safegate/error.hpp"

namespace safegate::messaging {

Throttle::Throttle(std::int64_t interval_ms) : interval_ms_(interval_ms) {
    if (interval_ms < 0) throw InvalidParameter("throttle interval must be >= 0");
}

ThrottleDecision Throttle::decide(const std::string& key, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    const auto it = last_dispatch_.find(key);
    if (it == last_dispatch_.end() || now_ms - it->second >= interval_ms_) {
        last_dispatch_[key] = now_ms;
        return ThrottleDecision::Dispatch;
    }
    return ThrottleDecision::Suppress;
}

void Throttle::reset() {
    std::lock_guard lock(mutex_);
    last_dispatch_.clear();
}

}  // namespace safegate::messaging
