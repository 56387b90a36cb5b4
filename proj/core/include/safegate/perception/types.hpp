#pragma once

#include <string>
#include <vector>

#include "safegate/change/change_detection.hpp"
#include "safegate/imaging/frame.hpp"

namespace safegate::perception {

using imaging::Frame;
using imaging::Rect;
using change::Position;

inline constexpr const char* kUnknownName = "unknown";

enum class DetectionKind { Person, Face };

[[nodiscard]] const char* to_string(DetectionKind k);

struct DetectionBox {
    DetectionKind kind = DetectionKind::Person;
    Rect bbox;
    double confidence = 1.0;
};

struct PersonObservation {
    std::string name = kUnknownName;
    Position position = Position::Center;
    std::vector<std::string> desc_words;
    /// Recognition distance, or a negative value when no face was matched.
    double distance = -1.0;

    [[nodiscard]] bool is_known() const { return name != kUnknownName; }
};

}  // namespace safegate::perception
