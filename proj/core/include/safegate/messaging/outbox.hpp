#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace safegate::messaging {

enum class Channel { MMS, Call };
enum class EventStatus { Pending, Sent, Suppressed, Failed };

[[nodiscard]] const char* to_string(Channel c);
[[nodiscard]] const char* to_string(EventStatus s);
/// "MMS"/"mms", "Call"/"call". Throws InvalidParameter otherwise.
[[nodiscard]] Channel parse_channel(const std::string& text);
[[nodiscard]] EventStatus parse_status(const std::string& text);

struct NotificationEvent {
    std::string camera_id;
    std::string message;
    std::string snapshot_ref;
    std::int64_t created_at_ms = 0;
    Channel channel = Channel::MMS;
    EventStatus status = EventStatus::Pending;
};

struct OutboxRecord {
    Channel channel = Channel::MMS;
    std::string recipient;
    std::string subject;      // the message text travels as the transcript of the attachment
    std::string attachment;   // snapshot reference
    std::int64_t created_at_ms = 0;
    std::string camera_id;
    EventStatus status = EventStatus::Pending;
    std::string error;
};

/// Delivery backend. Implementations may throw; dispatch() records that as Failed.
class OutboxAdapter {
public:
    virtual ~OutboxAdapter() = default;
    virtual void deliver(const OutboxRecord& record) = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

/// Writes outbox/<created_at>-<camera>.json (a numeric suffix is added on collision).
class FileOutbox final : public OutboxAdapter {
public:
    explicit FileOutbox(std::filesystem::path dir);
    void deliver(const OutboxRecord& record) override;
    [[nodiscard]] std::string name() const override { return "file"; }
    [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::mutex mutex_;
};

class MemoryOutbox final : public OutboxAdapter {
public:
    void deliver(const OutboxRecord& record) override;
    [[nodiscard]] std::string name() const override { return "memory"; }
    [[nodiscard]] std::vector<OutboxRecord> records() const;

private:
    mutable std::mutex mutex_;
    std::vector<OutboxRecord> records_;
};

/// Routes each channel to an adapter.
struct AdapterSet {
    std::shared_ptr<OutboxAdapter> mms;
    std::shared_ptr<OutboxAdapter> call;
};

/// Deliver a Pending event. Adapter exceptions yield a Failed record instead of
/// propagating. Throws InvalidParameter for a non-Pending event or a channel with no adapter.
OutboxRecord dispatch(const NotificationEvent& event, const std::string& recipient, AdapterSet& adapters);

/// JSON encoding used by FileOutbox: {channel, recipient, subject, attachment, created_at}.
[[nodiscard]] std::string outbox_record_to_json(const OutboxRecord& record);
[[nodiscard]] OutboxRecord outbox_record_from_json(const std::string& json);

}  // namespace safegate::messaging
