#include "safegate/access/door.hpp"

namespace safegate::access {

const char* to_string(LockState s) { return s == LockState::Unlocked ? "unlocked" : "locked"; }

const char* to_string(DoorCommand c) { return c == DoorCommand::Open ? "open" : "close"; }

DoorCommand parse_command(const std::string& text) {
    if (text == "open") return DoorCommand::Open;
    if (text == "close") return DoorCommand::Close;
    throw InvalidParameter("unknown door command '" + text + "' (expected open or close)");
}

DoorState command(const DoorState& door, DoorCommand cmd, std::int64_t now_ms, std::int64_t relock_interval_ms) {
    if (relock_interval_ms <= 0) throw InvalidParameter("relock interval must be > 0");
    DoorState next = door;
    if (cmd == DoorCommand::Close) {
        next.state = LockState::Locked;
        next.relock_deadline_ms.reset();
        return next;
    }
    if (!door.powered) throw FailSecureError("door lock has no power; it stays locked");
    next.state = LockState::Unlocked;
    next.relock_deadline_ms = now_ms + relock_interval_ms;
    return next;
}

DoorState tick(const DoorState& door, std::int64_t now_ms) {
    if (door.state != LockState::Unlocked || !door.relock_deadline_ms) return door;
    if (now_ms < *door.relock_deadline_ms) return door;
    DoorState next = door;
    next.state = LockState::Locked;
    next.relock_deadline_ms.reset();
    return next;
}

DoorState power_event(const DoorState& door, bool powered) {
    DoorState next = door;
    next.powered = powered;
    if (!powered) {
        next.state = LockState::Locked;
        next.relock_deadline_ms.reset();
    }
    return next;
}

void SimulatedActuator::actuate(Actuation action, std::int64_t at_ms) {
    std::lock_guard lock(mutex_);
    log_.push_back({action, at_ms});
}

std::vector<SimulatedActuator::Entry> SimulatedActuator::log() const {
    std::lock_guard lock(mutex_);
    return log_;
}

DoorController::DoorController(std::int64_t relock_interval_ms, std::shared_ptr<Actuator> actuator)
    : relock_interval_ms_(relock_interval_ms), actuator_(std::move(actuator)) {
    if (relock_interval_ms <= 0) throw InvalidParameter("relock interval must be > 0");
}

DoorState DoorController::transition(const DoorState& next, std::int64_t now_ms) {
    if (actuator_ && next.state != state_.state) {
        actuator_->actuate(next.state == LockState::Unlocked ? Actuation::Unlock : Actuation::Lock, now_ms);
    }
    state_ = next;
    return state_;
}

DoorState DoorController::apply(DoorCommand cmd, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    const DoorState current = access::tick(state_, now_ms);
    return transition(command(current, cmd, now_ms, relock_interval_ms_), now_ms);
}

DoorState DoorController::tick(std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    return transition(access::tick(state_, now_ms), now_ms);
}

DoorState DoorController::set_power(bool powered, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    return transition(power_event(state_, powered), now_ms);
}

DoorState DoorController::snapshot() const {
    std::lock_guard lock(mutex_);
    return state_;
}

}  // namespace safegate::access
