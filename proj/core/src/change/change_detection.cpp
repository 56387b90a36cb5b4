#include "safegate/change/change_detection.hpp"

#include <cstdlib>
#include <sstream>

#include "safegate/error.hpp"
#include "safegate/imaging/color.hpp"
#include "safegate/imaging/components.hpp"
#include "safegate/imaging/morphology.hpp"
#include "safegate/imaging/threshold.hpp"

namespace safegate::change {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int parse_int(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidParameter("bad strategy '" + whole + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

}  // namespace

Strategy parse_strategy(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.empty()) throw InvalidParameter("empty strategy");
    const std::string& name = parts[0];
    if (name == "binary") {
        if (parts.size() > 2) throw InvalidParameter("bad strategy '" + text + "'");
        BinaryStrategy s;
        if (parts.size() == 2) s.threshold = parse_int(parts[1], text);
        if (s.threshold < 0 || s.threshold > 255) throw InvalidParameter("binary threshold out of 0..255");
        return s;
    }
    if (name == "adaptive") {
        if (parts.size() > 3) throw InvalidParameter("bad strategy '" + text + "'");
        AdaptiveGaussianStrategy s;
        if (parts.size() >= 2) s.block = parse_int(parts[1], text);
        if (parts.size() == 3) s.c = parse_int(parts[2], text);
        if (s.block < 3 || s.block % 2 == 0) throw InvalidParameter("adaptive block must be odd and >= 3");
        return s;
    }
    if (name == "otsu" && parts.size() == 1) return OtsuStrategy{};
    throw InvalidParameter("unknown strategy '" + text + "' (expected binary[:t], adaptive[:block[:c]] or otsu)");
}

std::string to_string(const Strategy& strategy) {
    return std::visit(overloaded{
                          [](const BinaryStrategy& s) { return "binary:" + std::to_string(s.threshold); },
                          [](const AdaptiveGaussianStrategy& s) {
                              std::ostringstream os;
                              os << "adaptive:" << s.block << ':' << s.c;
                              return os.str();
                          },
                          [](const OtsuStrategy&) { return std::string("otsu"); },
                      },
                      strategy);
}

void ChangeConfig::validate() const {
    if (area_threshold < 1) throw InvalidParameter("area_threshold must be >= 1");
    if (closing_iterations < 0) throw InvalidParameter("closing_iterations must be >= 0");
}

const char* to_string(Position p) {
    switch (p) {
        case Position::Left: return "left";
        case Position::Center: return "center";
        case Position::Right: return "right";
    }
    return "center";
}

Position position_of(const Rect& box, int frame_width) {
    // Compare 2*center against 2*width/3 boundaries in integers: 3*(2x+w) vs 2*W.
    const long long twice_center_x3 = 3LL * (2LL * box.x + box.width);
    if (twice_center_x3 < 2LL * frame_width) return Position::Left;
    if (twice_center_x3 < 4LL * frame_width) return Position::Center;
    return Position::Right;
}

Frame frame_diff(const Frame& prev, const Frame& curr) {
    imaging::require_gray(prev, "frame_diff");
    imaging::require_gray(curr, "frame_diff");
    imaging::require_same_size(prev, curr, "frame_diff");
    Frame out(curr.width(), curr.height(), 1);
    const auto a = prev.data();
    const auto b = curr.data();
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = static_cast<std::uint8_t>(std::abs(static_cast<int>(b[i]) - static_cast<int>(a[i])));
    }
    out.timestamp_ms = curr.timestamp_ms;
    out.camera_id = curr.camera_id;
    return out;
}

ChangeResult detect_changes(const Frame& prev, const Frame& curr, const ChangeConfig& config) {
    config.validate();
    imaging::require_same_size(prev, curr, "detect_changes");
    const Frame diff = frame_diff(imaging::to_grayscale(prev), imaging::to_grayscale(curr));

    ChangeResult result;
    result.strategy = to_string(config.strategy);
    Frame mask = std::visit(overloaded{
                                [&](const BinaryStrategy& s) {
                                    result.applied_threshold = s.threshold;
                                    return imaging::binary_threshold(diff, s.threshold);
                                },
                                [&](const AdaptiveGaussianStrategy& s) {
                                    return imaging::adaptive_threshold_gaussian(diff, s.block, s.c);
                                },
                                [&](const OtsuStrategy&) {
                                    auto otsu = imaging::otsu_threshold(diff);
                                    result.applied_threshold = otsu.threshold;
                                    return std::move(otsu.binary);
                                },
                            },
                            config.strategy);

    mask = imaging::binary_closing(mask, config.closing_iterations);
    for (const auto v : mask.data()) result.changed_pixels += v != 0;

    const auto labels = imaging::connected_components(mask);
    for (const auto& region : labels.regions) {
        if (region.area >= config.area_threshold) result.regions.push_back({region.bbox, region.area});
    }
    result.has_activity = !result.regions.empty();
    return result;
}

StrategyScore score(const Confusion& c) {
    StrategyScore s;
    s.confusion = c;
    s.precision = c.tp + c.fp == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    s.recall = c.tp + c.fn == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    return s;
}

StrategyScore evaluate_strategy(const std::vector<LabeledPair>& corpus, const ChangeConfig& config) {
    if (corpus.empty()) throw InvalidParameter("evaluate_strategy: empty corpus");
    Confusion c;
    for (const auto& pair : corpus) {
        const bool predicted = detect_changes(pair.prev, pair.curr, config).has_activity;
        if (predicted && pair.active) ++c.tp;
        else if (predicted) ++c.fp;
        else if (pair.active) ++c.fn;
        else ++c.tn;
    }
    return score(c);
}

}  // namespace safegate::change
