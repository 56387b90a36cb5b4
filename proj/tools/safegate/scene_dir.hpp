#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safegate/gateway/engine.hpp"
#include "safegate/imaging/frame.hpp"
#include "safegate/perception/backends.hpp"

namespace safegate::tools {

/// A PNG frame on disk with its optional sidecar manifest (<stem>.json).
struct SceneFrame {
    std::filesystem::path path;
    imaging::Frame frame;
    std::optional<perception::Manifest> manifest;
};

/// All *.png files of `dir` in lexical order, each paired with its sidecar manifest.
[[nodiscard]] std::vector<SceneFrame> load_scene_dir(const std::filesystem::path& dir);

/// Reads "frame,active" rows (header optional; active is 0/1/true/false) keyed by file name.
[[nodiscard]] std::map<std::string, bool> load_labels(const std::filesystem::path& csv);

/// Each subdirectory is one person: its PNG files are face crops, and an optional
/// profile.json supplies {"name","contact"} (the directory name is the fallback name).
/// Returns the number of persons enrolled.
int enroll_profile_dir(gateway::Engine& engine, const std::filesystem::path& dir);

}  // namespace safegate::tools
