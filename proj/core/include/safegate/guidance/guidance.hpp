#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::guidance {

/// Face bounding box as reported by a detector; every field must be > 0.
struct FaceBox {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
};

enum class FacePosition {
    Small,
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
    LeftEdge,
    TopEdge,
    RightEdge,
    BottomEdge,
    Center,
};

inline constexpr std::array<FacePosition, 10> kAllPositions{
    FacePosition::Small,     FacePosition::TopLeft,  FacePosition::TopRight,  FacePosition::BottomLeft,
    FacePosition::BottomRight, FacePosition::LeftEdge, FacePosition::TopEdge, FacePosition::RightEdge,
    FacePosition::BottomEdge, FacePosition::Center,
};

/// Spoken feedback label, e.g. "Face in top left".
[[nodiscard]] const char* label(FacePosition p);

/// Largest face area (w*h) still reported as too small.
inline constexpr long long kSmallFaceArea = 1024;

/// Position of a face box inside a window. Margins use floor division for w/2 and h/2;
/// the branch order is: small, four corners, four edges, centre.
/// Throws InvalidParameter on a non-positive box field or window dimension.
[[nodiscard]] FacePosition face_position(int window_w, int window_h, const FaceBox& box);

struct OrientationSample {
    double t_seconds = 0.0;
    double angle_degrees = 0.0;
};

enum class RotationVerdict { Ok, TooFast };

inline constexpr double kMaxRotationDegPerSec = 20.0;

/// TooFast iff any adjacent pair rotates faster than 20 deg/s. Needs >= 2 samples with
/// strictly increasing timestamps.
[[nodiscard]] RotationVerdict rotation_speed_check(const std::vector<OrientationSample>& samples,
                                                   double max_rate = kMaxRotationDegPerSec);
[[nodiscard]] const char* label(RotationVerdict v);

inline constexpr std::size_t kMaxEnrollmentFrames = 50;

/// Face finder used on recorded video; returns nullopt when no face is visible.
using FaceLocator = std::function<std::optional<FaceBox>(const imaging::Frame& frame, std::size_t index)>;

struct SelectedFrame {
    std::size_t index = 0;
    imaging::Frame crop;
};

/// Keep frames whose face is centred (and therefore not small), then sample them with
/// stride ceil(eligible / 50) so that at most 50 crops come from across the video.
[[nodiscard]] std::vector<SelectedFrame> select_enrollment_frames(const std::vector<imaging::Frame>& video,
                                                                  const FaceLocator& locate);

}  // namespace safegate::guidance
