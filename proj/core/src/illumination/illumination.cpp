#include "safegate/illumination/illumination.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "safegate/error.hpp"
#include "safegate/imaging/color.hpp"

namespace safegate::illumination {

namespace {

constexpr int kDarkBins = 75;          // bins 0..74
constexpr int kBrightFirstBin = 181;   // bins 181..255
constexpr double kPoorLightingShare = 0.75;
constexpr double kGammaTriggerShare = 0.5;

}  // namespace

const char* to_string(LightingCondition c) { return c == LightingCondition::Poor ? "poor" : "good"; }

LightingAssessment assess_lighting(const Frame& frame) {
    const auto hist = imaging::intensity_histogram(imaging::to_grayscale(frame));
    LightingAssessment a;
    a.dark_fraction = hist.fraction_range(0, kDarkBins - 1);
    a.condition = a.dark_fraction >= kPoorLightingShare ? LightingCondition::Poor : LightingCondition::Good;
    return a;
}

GammaParams select_gamma(const Frame& frame) {
    const Frame light = frame.channels() == 3 ? imaging::lightness_channel(frame) : frame;
    const auto hist = imaging::intensity_histogram(light);
    if (hist.fraction_range(0, kDarkBins - 1) > kGammaTriggerShare) return {kDarkGamma};
    if (hist.fraction_range(kBrightFirstBin, 255) > kGammaTriggerShare) return {kOverexposedGamma};
    return {1.0};
}

std::array<std::uint8_t, 256> gamma_lut(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameter("gamma must be a positive finite number");
    }
    std::array<std::uint8_t, 256> lut{};
    for (int i = 0; i < 256; ++i) {
        const double o = 255.0 * std::pow(i / 255.0, 1.0 / gamma);
        lut[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::lround(std::clamp(o, 0.0, 255.0)));
    }
    return lut;
}

Frame gamma_correct(const Frame& frame, GammaParams params) {
    const auto lut = gamma_lut(params.gamma);
    Frame out = frame;
    if (params.gamma == 1.0) return out;
    for (auto& v : out.data()) v = lut[v];
    return out;
}

std::uint64_t clip_bound(double clip_limit, std::uint64_t tile_pixels) {
    const double bound = clip_limit * static_cast<double>(tile_pixels) / 256.0;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(bound));
}

std::array<std::uint64_t, 256> clip_histogram(const std::array<std::uint64_t, 256>& hist, std::uint64_t limit) {
    std::array<std::uint64_t, 256> out = hist;
    std::uint64_t excess = 0;
    for (auto& b : out) {
        if (b > limit) {
            excess += b - limit;
            b = limit;
        }
    }
    const std::uint64_t per_bin = excess / 256;
    std::uint64_t residual = excess - per_bin * 256;
    for (auto& b : out) b += per_bin;
    if (residual > 0) {
        const std::uint64_t step = std::max<std::uint64_t>(256 / residual, 1);
        for (std::uint64_t i = 0; i < 256 && residual > 0; i += step, --residual) ++out[i];
    }
    return out;
}

Frame clahe(const Frame& channel, const ClaheParams& params) {
    imaging::require_gray(channel, "clahe");
    if (params.tiles_x < 1 || params.tiles_y < 1) throw InvalidParameter("clahe: tiles must be >= 1");
    if (!(params.clip_limit > 0.0)) throw InvalidParameter("clahe: clip_limit must be > 0");

    const int w = channel.width();
    const int h = channel.height();
    const int tx = std::min(params.tiles_x, w);
    const int ty = std::min(params.tiles_y, h);
    const int tile_w = (w + tx - 1) / tx;
    const int tile_h = (h + ty - 1) / ty;
    const auto src = channel.data();

    // One 256-entry mapping per tile. Tiles that run past the right/bottom edge
    // sample mirrored pixels so every tile holds tile_w * tile_h samples.
    auto mirror = [](int v, int n) { return v < n ? v : 2 * (n - 1) - v; };
    const auto n = static_cast<std::uint64_t>(tile_w) * static_cast<std::uint64_t>(tile_h);
    const std::uint64_t limit = clip_bound(params.clip_limit, n);
    const double scale = 255.0 / static_cast<double>(n);
    std::vector<std::array<std::uint8_t, 256>> luts(static_cast<std::size_t>(tx) * ty);
    for (int j = 0; j < ty; ++j) {
        for (int i = 0; i < tx; ++i) {
            std::array<std::uint64_t, 256> hist{};
            for (int y = j * tile_h; y < (j + 1) * tile_h; ++y) {
                const int sy = mirror(y, h);
                for (int x = i * tile_w; x < (i + 1) * tile_w; ++x) {
                    ++hist[src[static_cast<std::size_t>(sy) * w + mirror(x, w)]];
                }
            }
            const auto clipped = clip_histogram(hist, limit);
            auto& lut = luts[static_cast<std::size_t>(j) * tx + i];
            std::uint64_t cdf = 0;
            for (int v = 0; v < 256; ++v) {
                cdf += clipped[static_cast<std::size_t>(v)];
                lut[static_cast<std::size_t>(v)] =
                    static_cast<std::uint8_t>(std::lround(std::min(255.0, static_cast<double>(cdf) * scale)));
            }
        }
    }

    Frame out(w, h, 1);
    auto dst = out.data();
    for (int y = 0; y < h; ++y) {
        const double fy = (y + 0.5) / tile_h - 0.5;
        int j0 = static_cast<int>(std::floor(fy));
        const double wy = fy - j0;
        int j1 = j0 + 1;
        j0 = std::clamp(j0, 0, ty - 1);
        j1 = std::clamp(j1, 0, ty - 1);
        for (int x = 0; x < w; ++x) {
            const double fx = (x + 0.5) / tile_w - 0.5;
            int i0 = static_cast<int>(std::floor(fx));
            const double wx = fx - i0;
            int i1 = i0 + 1;
            i0 = std::clamp(i0, 0, tx - 1);
            i1 = std::clamp(i1, 0, tx - 1);
            const auto v = src[static_cast<std::size_t>(y) * w + x];
            const double a = luts[static_cast<std::size_t>(j0) * tx + i0][v];
            const double b = luts[static_cast<std::size_t>(j0) * tx + i1][v];
            const double c = luts[static_cast<std::size_t>(j1) * tx + i0][v];
            const double d = luts[static_cast<std::size_t>(j1) * tx + i1][v];
            const double top = a * (1.0 - wx) + b * wx;
            const double bottom = c * (1.0 - wx) + d * wx;
            dst[static_cast<std::size_t>(y) * w + x] =
                static_cast<std::uint8_t>(std::lround(std::clamp(top * (1.0 - wy) + bottom * wy, 0.0, 255.0)));
        }
    }
    out.timestamp_ms = channel.timestamp_ms;
    out.camera_id = channel.camera_id;
    return out;
}

NormalizationReport normalize_illumination_report(const Frame& rgb, const ClaheParams& params) {
    imaging::require_rgb(rgb, "normalize_illumination");
    NormalizationReport report;
    report.gamma = select_gamma(rgb);
    const Frame corrected = gamma_correct(rgb, report.gamma);

    auto lab = imaging::to_lab(corrected);
    Frame light(rgb.width(), rgb.height(), 1);
    auto l8 = light.data();
    for (std::size_t i = 0; i < lab.size(); ++i) {
        l8[i] = static_cast<std::uint8_t>(std::lround(std::clamp(lab[i].l * 255.0 / 100.0, 0.0, 255.0)));
    }
    const Frame equalized = clahe(light, params);
    const auto eq = equalized.data();
    for (std::size_t i = 0; i < lab.size(); ++i) lab[i].l = eq[i] * 100.0 / 255.0;

    report.frame = imaging::from_lab(lab, rgb.width(), rgb.height());
    report.frame.timestamp_ms = rgb.timestamp_ms;
    report.frame.camera_id = rgb.camera_id;
    return report;
}

Frame normalize_illumination(const Frame& rgb, const ClaheParams& params) {
    return normalize_illumination_report(rgb, params).frame;
}

}  // namespace safegate::illumination
