#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "safegate/change/change_detection.hpp"

namespace safegate::gateway {

struct GatewayConfig {
    std::optional<std::filesystem::path> key_path;
    std::int64_t relock_interval_s = 30;
    std::int64_t notify_interval_s = 180;
    long long area_threshold = 400;
    std::string strategy = "binary:20";
    int closing_iterations = 1;
    std::filesystem::path outbox_dir = "outbox";
    std::filesystem::path store_dir = "store";

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string detector = "auto";
    std::string channel = "MMS";
    std::string resident_contact = "resident";
    std::vector<std::string> harmful_lexicon{"gun", "mask", "baseball bat"};
    bool pluralize = false;
    /// Recording segments close after this long without activity.
    std::int64_t segment_gap_s = 5;
    /// Span searched after the requested time point when browsing recordings.
    std::int64_t recording_window_min = 60;
    /// Ingest tokens older than this are rejected; 0 disables the check.
    std::int64_t token_ttl_s = 300;
    int model_retention = 3;

    [[nodiscard]] change::ChangeConfig change_config() const;
    void validate() const;

    /// Unknown keys are rejected so typos do not silently fall back to defaults.
    [[nodiscard]] static GatewayConfig from_json(const std::string& text);
    [[nodiscard]] static GatewayConfig load(const std::filesystem::path& path);
};

}  // namespace safegate::gateway
