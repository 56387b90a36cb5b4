#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "safegate/error.hpp"

namespace safegate::access {

enum class LockState { Locked, Unlocked };
enum class DoorCommand { Open, Close };

[[nodiscard]] const char* to_string(LockState s);
[[nodiscard]] const char* to_string(DoorCommand c);
/// "open" / "close". Throws InvalidParameter otherwise.
[[nodiscard]] DoorCommand parse_command(const std::string& text);

inline constexpr std::int64_t kDefaultRelockIntervalMs = 30'000;

/// The solenoid is wired fail-secure: without power the door is locked.
struct DoorState {
    LockState state = LockState::Locked;
    std::optional<std::int64_t> relock_deadline_ms;
    bool powered = true;

    friend bool operator==(const DoorState&, const DoorState&) = default;
};

/// Open requested while the lock has no power.
class FailSecureError : public Error {
public:
    using Error::Error;
};

/// Open -> Unlocked until now + relock_interval (re-opening extends the deadline);
/// Close -> Locked. Throws FailSecureError for Open while unpowered.
[[nodiscard]] DoorState command(const DoorState& door, DoorCommand cmd, std::int64_t now_ms,
                                std::int64_t relock_interval_ms = kDefaultRelockIntervalMs);

/// Relocks once now >= deadline.
[[nodiscard]] DoorState tick(const DoorState& door, std::int64_t now_ms);

/// Power loss forces Locked and clears the deadline; power return never unlocks.
[[nodiscard]] DoorState power_event(const DoorState& door, bool powered);

enum class Actuation { Lock, Unlock };

/// Receives physical switch commands whenever the lock state changes.
class Actuator {
public:
    virtual ~Actuator() = default;
    virtual void actuate(Actuation action, std::int64_t at_ms) = 0;
};

/// Records actuations in memory.
class SimulatedActuator final : public Actuator {
public:
    struct Entry {
        Actuation action;
        std::int64_t at_ms;
    };
    void actuate(Actuation action, std::int64_t at_ms) override;
    [[nodiscard]] std::vector<Entry> log() const;

private:
    mutable std::mutex mutex_;
    std::vector<Entry> log_;
};

/// Serialises commands, ticks and power events for one door and forwards state
/// changes to the actuator.
class DoorController {
public:
    explicit DoorController(std::int64_t relock_interval_ms = kDefaultRelockIntervalMs,
                            std::shared_ptr<Actuator> actuator = nullptr);

    DoorState apply(DoorCommand cmd, std::int64_t now_ms);
    DoorState tick(std::int64_t now_ms);
    DoorState set_power(bool powered, std::int64_t now_ms);
    [[nodiscard]] DoorState snapshot() const;
    [[nodiscard]] std::int64_t relock_interval_ms() const { return relock_interval_ms_; }

private:
    DoorState transition(const DoorState& next, std::int64_t now_ms);

    std::int64_t relock_interval_ms_;
    std::shared_ptr<Actuator> actuator_;
    mutable std::mutex mutex_;
    DoorState state_;
};

}  // namespace safegate::access
