#include "safegate/messaging/outbox.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "safegate/error.hpp"

namespace safegate::messaging {

using nlohmann::json;

const char* to_string(Channel c) { return c == Channel::Call ? "Call" : "MMS"; }

const char* to_string(EventStatus s) {
    switch (s) {
        case EventStatus::Pending: return "Pending";
        case EventStatus::Sent: return "Sent";
        case EventStatus::Suppressed: return "Suppressed";
        case EventStatus::Failed: return "Failed";
    }
    return "Pending";
}

Channel parse_channel(const std::string& text) {
    if (text == "MMS" || text == "mms") return Channel::MMS;
    if (text == "Call" || text == "call") return Channel::Call;
    throw InvalidParameter("unknown channel '" + text + "'");
}

EventStatus parse_status(const std::string& text) {
    for (const auto s : {EventStatus::Pending, EventStatus::Sent, EventStatus::Suppressed, EventStatus::Failed}) {
        if (text == to_string(s)) return s;
    }
    throw InvalidParameter("unknown event status '" + text + "'");
}

std::string outbox_record_to_json(const OutboxRecord& r) {
    json j{{"channel", to_string(r.channel)},
           {"recipient", r.recipient},
           {"subject", r.subject},
           {"attachment", r.attachment},
           {"created_at", r.created_at_ms},
           {"camera", r.camera_id}};
    return j.dump(2);
}

OutboxRecord outbox_record_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        OutboxRecord r;
        r.channel = parse_channel(j.at("channel").get<std::string>());
        r.recipient = j.at("recipient").get<std::string>();
        r.subject = j.at("subject").get<std::string>();
        r.attachment = j.at("attachment").get<std::string>();
        r.created_at_ms = j.at("created_at").get<std::int64_t>();
        r.camera_id = j.value("camera", std::string());
        r.status = EventStatus::Sent;
        return r;
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("outbox record: ") + e.what());
    }
}

FileOutbox::FileOutbox(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

void FileOutbox::deliver(const OutboxRecord& record) {
    std::lock_guard lock(mutex_);
    std::string camera = record.camera_id.empty() ? "camera" : record.camera_id;
    for (auto& c : camera) {
        if (c == '/' || c == '\\' || c == ' ') c = '_';
    }
    const std::string stem = std::to_string(record.created_at_ms) + "-" + camera;
    std::filesystem::path path = dir_ / (stem + ".json");
    for (int n = 1; std::filesystem::exists(path); ++n) path = dir_ / (stem + "-" + std::to_string(n) + ".json");

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("outbox: cannot write " + tmp.string());
        out << outbox_record_to_json(record) << '\n';
        if (!out) throw IoError("outbox: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void MemoryOutbox::deliver(const OutboxRecord& record) {
    std::lock_guard lock(mutex_);
    records_.push_back(record);
}

std::vector<OutboxRecord> MemoryOutbox::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

OutboxRecord dispatch(const NotificationEvent& event, const std::string& recipient, AdapterSet& adapters) {
    if (event.status != EventStatus::Pending) throw InvalidParameter("dispatch: event is not pending");
    OutboxAdapter* adapter = nullptr;
    switch (event.channel) {
        case Channel::MMS: adapter = adapters.mms.get(); break;
        case Channel::Call: adapter = adapters.call.get(); break;
    }
    if (adapter == nullptr) {
        throw InvalidParameter(std::string("dispatch: no adapter for channel ") + to_string(event.channel));
    }
    OutboxRecord record;
    record.channel = event.channel;
    record.recipient = recipient;
    record.subject = event.message;
    record.attachment = event.snapshot_ref;
    record.created_at_ms = event.created_at_ms;
    record.camera_id = event.camera_id;
    try {
        adapter->deliver(record);
        record.status = EventStatus::Sent;
    } catch (const std::exception& e) {
        record.status = EventStatus::Failed;
        record.error = e.what();
    }
    return record;
}

}  // namespace safegate::messaging
