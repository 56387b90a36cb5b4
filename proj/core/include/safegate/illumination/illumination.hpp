#pragma once

#include <array>
#include <cstdint>

#include "safegate/imaging/frame.hpp"
#include "safegate/imaging/histogram.hpp"

namespace safegate::illumination {

using imaging::Frame;

enum class LightingCondition { Good, Poor };

struct LightingAssessment {
    LightingCondition condition = LightingCondition::Good;
    /// Share of intensity samples in bins 0..74.
    double dark_fraction = 0.0;
};

[[nodiscard]] const char* to_string(LightingCondition c);

/// Poor iff at least 75% of the intensity histogram falls in bins 0..74.
[[nodiscard]] LightingAssessment assess_lighting(const Frame& frame);

struct GammaParams {
    double gamma = 1.0;
};

inline constexpr double kDarkGamma = 1.5;
inline constexpr double kOverexposedGamma = 0.7;

/// From the L* histogram: >50% in bins 0..74 -> 1.5, else >50% in bins 181..255 -> 0.7, else 1.0.
[[nodiscard]] GammaParams select_gamma(const Frame& frame);

/// O = round(255 * (I/255)^(1/gamma)) on every channel. Throws InvalidParameter for gamma <= 0.
[[nodiscard]] Frame gamma_correct(const Frame& frame, GammaParams params);
[[nodiscard]] std::array<std::uint8_t, 256> gamma_lut(double gamma);

struct ClaheParams {
    double clip_limit = 2.0;
    int tiles_x = 8;
    int tiles_y = 8;
};

/// Clip every bin at `limit` and spread the excess evenly over all 256 bins
/// (the remainder goes one count at a time to evenly strided bins).
[[nodiscard]] std::array<std::uint64_t, 256> clip_histogram(const std::array<std::uint64_t, 256>& hist,
                                                             std::uint64_t limit);

/// Absolute per-bin limit used for a tile: max(1, clip_limit * tile_pixels / 256).
[[nodiscard]] std::uint64_t clip_bound(double clip_limit, std::uint64_t tile_pixels);

/// Contrast-limited adaptive histogram equalization of a single channel, with
/// bilinear blending between neighbouring tile mappings.
[[nodiscard]] Frame clahe(const Frame& channel, const ClaheParams& params = {});

struct NormalizationReport {
    GammaParams gamma;
    Frame frame;
};

/// Gamma correction chosen by select_gamma, then CLAHE on L* with a*/b* preserved.
[[nodiscard]] NormalizationReport normalize_illumination_report(const Frame& rgb, const ClaheParams& params = {});
[[nodiscard]] Frame normalize_illumination(const Frame& rgb, const ClaheParams& params = {});

}  // namespace safegate::illumination
