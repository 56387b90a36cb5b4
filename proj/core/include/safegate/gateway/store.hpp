#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "safegate/imaging/frame.hpp"
#include "safegate/messaging/outbox.hpp"
#include "safegate/perception/recognizer.hpp"

struct sqlite3;

namespace safegate::gateway {

struct ProfileEntry {
    std::string person_id;
    std::string name;
    std::string contact;
    std::vector<std::string> image_paths;  // relative to the store root
    std::int64_t enrolled_at_ms = 0;
};

struct RecordingSegment {
    std::int64_t id = 0;
    std::string camera_id;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::vector<std::string> frame_refs;  // relative to the store root
    std::string snapshot_ref;
};

struct StoredEvent {
    std::int64_t id = 0;
    messaging::NotificationEvent event;
};

/// Lowercase alphanumerics with '-' separators; names that reduce to nothing map to "person".
[[nodiscard]] std::string person_id_for(const std::string& name);

/// Metadata lives in <root>/safegate.db (SQLite); images in plain files:
///   profiles/<person-id>/<nnn>.png, recordings/<camera>/<timestamp>.png, models/v<N>.json
class Store {
public:
    explicit Store(std::filesystem::path root);
    ~Store();
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    [[nodiscard]] const std::filesystem::path& root() const { return root_; }

    /// Creates or extends the profile for `name`; crops are appended as new images.
    ProfileEntry add_profile_images(const std::string& name, const std::string& contact,
                                    const std::vector<imaging::Frame>& crops, std::int64_t now_ms);
    [[nodiscard]] std::vector<ProfileEntry> profiles() const;
    [[nodiscard]] std::optional<ProfileEntry> profile(const std::string& person_id) const;

    /// Writes models/v<N>.json with N = latest + 1 and prunes all but the newest `retain`.
    int record_model_version(const perception::ProfileModel& model, std::int64_t now_ms, int retain);
    [[nodiscard]] int latest_model_version() const;
    [[nodiscard]] std::vector<int> model_versions() const;

    [[nodiscard]] std::string save_frame(const std::string& camera_id, const imaging::Frame& frame);
    /// Extends the camera's latest segment when `at_ms` is within `gap_ms` of its end,
    /// otherwise opens a new one.
    RecordingSegment append_activity(const std::string& camera_id, std::int64_t at_ms, const std::string& frame_ref,
                                     std::int64_t gap_ms);
    /// Segments intersecting [from_ms, to_ms], ordered by start time.
    [[nodiscard]] std::vector<RecordingSegment> segments_overlapping(std::int64_t from_ms, std::int64_t to_ms) const;
    [[nodiscard]] std::vector<RecordingSegment> segments() const;

    std::int64_t add_event(const messaging::NotificationEvent& event);
    /// Events created strictly after `since_ms`, newest first. Suppressed events are skipped
    /// unless requested.
    [[nodiscard]] std::vector<StoredEvent> events_since(std::int64_t since_ms, bool include_suppressed = false,
                                                        std::size_t limit = 200) const;

    /// Absolute path for a stored reference; rejects references escaping the store.
    [[nodiscard]] std::filesystem::path resolve(const std::string& ref) const;

private:
    void exec(const char* sql) const;
    [[nodiscard]] std::vector<std::string> frames_of(std::int64_t segment_id) const;

    std::filesystem::path root_;
    sqlite3* db_ = nullptr;
    mutable std::mutex mutex_;
};

/// Recognition model trained from every stored profile image.
[[nodiscard]] perception::ProfileModel build_model(const Store& store);

}  // namespace safegate::gateway
