#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "safegate/access/door.hpp"
#include "safegate/error.hpp"
#include "safegate/gateway/config.hpp"
#include "safegate/gateway/store.hpp"
#include "safegate/gateway/token.hpp"
#include "safegate/guidance/guidance.hpp"
#include "safegate/messaging/outbox.hpp"
#include "safegate/messaging/throttle.hpp"
#include "safegate/perception/backends.hpp"
#include "safegate/perception/recognizer.hpp"

namespace safegate::gateway {

/// No face in any submitted image was usable. Carries one guidance label per image.
class EnrollmentRejected : public Error {
public:
    EnrollmentRejected(const std::string& what, std::vector<std::string> labels)
        : Error(what), labels_(std::move(labels)) {}
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

private:
    std::vector<std::string> labels_;
};

struct IngestRequest {
    std::string camera_id;
    std::string token;  // encrypted PNG bytes
    std::optional<perception::Manifest> manifest;
    /// Overrides the token timestamp as the frame time.
    std::optional<std::int64_t> captured_at_ms;
};

struct IngestAck {
    std::int64_t result_id = 0;
};

struct EnrollImage {
    imaging::Frame image;
    /// Face box inside `image`; absent means the image is already a face crop.
    std::optional<guidance::FaceBox> face;
};

struct EnrollResult {
    std::string person_id;
    int model_version = 0;
    int accepted = 0;
    std::vector<std::string> labels;  // one per submitted image
};

struct RecordingQuery {
    bool no_activity = true;
    std::int64_t from_ms = 0;
    std::int64_t to_ms = 0;
    std::vector<RecordingSegment> segments;
};

inline constexpr const char* kNoActivityMessage = "no activity found";

/// "YYYY-MM-DD" + "HH:MM" (UTC) to epoch milliseconds. Throws InvalidParameter.
[[nodiscard]] std::int64_t parse_time_point(const std::string& date, const std::string& time);

/// Outcome of one processed frame, reported to an optional observer.
struct FrameOutcome {
    std::int64_t result_id = 0;
    std::string camera_id;
    std::int64_t timestamp_ms = 0;
    bool has_activity = false;
    bool recorded = false;
    std::vector<messaging::NotificationEvent> events;
    std::string error;
};

struct EngineDeps {
    std::shared_ptr<const perception::DetectorBackend> detector;     // default: from config
    std::shared_ptr<const perception::AttributeBackend> attributes;  // default: manifest attributes
    messaging::AdapterSet adapters;                                  // default: file outbox for both channels
    std::shared_ptr<access::Actuator> actuator;                      // default: simulated
    std::function<std::int64_t()> clock_ms;                          // default: system clock
    std::function<void(const FrameOutcome&)> observer;
};

/// Frame ingestion, recording, notification and enrolment. Frames from one camera are
/// processed in arrival order on that camera's worker; cameras run independently.
class Engine {
public:
    Engine(GatewayConfig config, TokenKey key, EngineDeps deps = {});
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Authenticates and decodes synchronously, then queues the frame.
    /// Throws AuthenticationError / TokenExpired for bad tokens and InvalidParameter for
    /// malformed requests or frames; nothing is queued or stored in either case.
    IngestAck ingest(const IngestRequest& request);
    /// Queues an already decoded frame (trusted local callers such as the simulator).
    IngestAck submit(const std::string& camera_id, imaging::Frame frame,
                     std::optional<perception::Manifest> manifest = std::nullopt);
    /// Blocks until every queued frame has been processed.
    void drain();

    EnrollResult enroll(const std::string& name, const std::string& contact, const std::vector<EnrollImage>& images);

    [[nodiscard]] RecordingQuery query_recordings(std::int64_t from_ms) const;
    [[nodiscard]] RecordingQuery query_recordings(const std::string& date, const std::string& time) const;
    [[nodiscard]] std::vector<StoredEvent> events_since(std::int64_t since_ms) const;

    /// Emergency stub: queues a Call record to the resident contact.
    messaging::OutboxRecord emergency(const std::string& camera_id);

    [[nodiscard]] access::DoorController& door() { return door_; }
    [[nodiscard]] std::shared_ptr<const perception::ProfileModel> model() const;
    [[nodiscard]] int model_version() const;
    [[nodiscard]] Store& store() { return store_; }
    [[nodiscard]] const GatewayConfig& config() const { return config_; }
    [[nodiscard]] const TokenKey& key() const { return key_; }
    [[nodiscard]] std::int64_t now_ms() const;

private:
    struct Job {
        std::int64_t result_id;
        imaging::Frame frame;
        std::optional<perception::Manifest> manifest;
    };
    struct Camera {
        std::string id;
        std::deque<Job> queue;
        std::optional<imaging::Frame> previous;
        std::thread worker;
    };

    Camera& camera_for(const std::string& id);
    void run(Camera& cam);
    FrameOutcome process(Camera& cam, Job& job);
    void notify(const std::string& throttle_key, messaging::NotificationEvent event, FrameOutcome& outcome);
    void rebuild_model();

    GatewayConfig config_;
    change::ChangeConfig change_;
    TokenKey key_;
    EngineDeps deps_;
    Store store_;
    messaging::Throttle throttle_;
    access::DoorController door_;

    mutable std::mutex model_mutex_;
    std::shared_ptr<const perception::ProfileModel> model_;
    int model_version_ = 0;
    std::mutex enroll_mutex_;

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::condition_variable idle_cv_;
    std::map<std::string, std::unique_ptr<Camera>> cameras_;
    std::size_t in_flight_ = 0;
    bool stopping_ = false;
    std::atomic<std::int64_t> next_result_id_{1};
};

}  // namespace safegate::gateway
