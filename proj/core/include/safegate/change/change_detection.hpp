#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::change {

using imaging::Frame;
using imaging::Rect;

struct BinaryStrategy {
    int threshold = 20;
};

struct AdaptiveGaussianStrategy {
    int block = 11;
    double c = -10.0;
};

struct OtsuStrategy {};

using Strategy = std::variant<BinaryStrategy, AdaptiveGaussianStrategy, OtsuStrategy>;

/// "binary:20", "adaptive:11:-10", "otsu". Throws InvalidParameter on anything else.
[[nodiscard]] Strategy parse_strategy(const std::string& text);
[[nodiscard]] std::string to_string(const Strategy& strategy);

struct ChangeConfig {
    Strategy strategy = BinaryStrategy{20};
    /// Regions smaller than this many pixels are discarded (inclusive bound: area >= threshold survives).
    long long area_threshold = 400;
    int closing_iterations = 1;

    void validate() const;
};

struct ActivityRegion {
    Rect bbox;
    long long area = 0;
    friend bool operator==(const ActivityRegion&, const ActivityRegion&) = default;
};

struct ChangeResult {
    bool has_activity = false;
    std::vector<ActivityRegion> regions;
    long long changed_pixels = 0;
    std::string strategy;
    /// Threshold actually applied (Otsu picks it per pair; -1 for adaptive).
    int applied_threshold = -1;

    friend bool operator==(const ChangeResult&, const ChangeResult&) = default;
};

enum class Position { Left, Center, Right };

[[nodiscard]] const char* to_string(Position p);
/// Left/center/right third of the frame width containing the box's horizontal center.
[[nodiscard]] Position position_of(const Rect& box, int frame_width);

/// |curr - prev| per pixel.
[[nodiscard]] Frame frame_diff(const Frame& prev, const Frame& curr);

/// diff -> threshold -> closing -> 8-connected components -> area filter.
/// RGB inputs are converted to intensity first.
[[nodiscard]] ChangeResult detect_changes(const Frame& prev, const Frame& curr, const ChangeConfig& config);

struct LabeledPair {
    Frame prev;
    Frame curr;
    bool active = false;
};

struct Confusion {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;
};

struct StrategyScore {
    double precision = 0.0;
    double recall = 0.0;
    Confusion confusion;
};

/// precision = TP/(TP+FP), recall = TP/(TP+FN). A zero denominator yields 1.0
/// (no positive predictions means no false alarms; no positive labels means nothing missed).
[[nodiscard]] StrategyScore score(const Confusion& c);
[[nodiscard]] StrategyScore evaluate_strategy(const std::vector<LabeledPair>& corpus, const ChangeConfig& config);

}  // namespace safegate::change
