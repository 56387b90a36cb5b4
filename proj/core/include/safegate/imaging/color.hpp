#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

/// HSV sample with hue in half-degrees [0,180) so the full range fits in 8 bits.
struct Hsv {
    std::uint8_t h = 0;
    std::uint8_t s = 0;
    std::uint8_t v = 0;
    friend bool operator==(const Hsv&, const Hsv&) = default;
};

/// CIE L*a*b* sample (D65 white), L in [0,100].
struct Lab {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// BT.601 luma, round(0.299 R + 0.587 G + 0.114 B). Gray input is returned unchanged.
[[nodiscard]] Frame to_grayscale(const Frame& frame);

[[nodiscard]] Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);
[[nodiscard]] std::vector<Hsv> rgb_to_hsv(const Frame& rgb);

[[nodiscard]] Lab rgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);
[[nodiscard]] std::array<std::uint8_t, 3> lab_to_rgb(const Lab& lab);

/// Per-pixel L*a*b* conversion of an RGB frame.
[[nodiscard]] std::vector<Lab> to_lab(const Frame& rgb);
/// Recompose an RGB frame from Lab samples (sizes must match width*height).
[[nodiscard]] Frame from_lab(const std::vector<Lab>& lab, int width, int height);

/// L* scaled from [0,100] to [0,255] and rounded.
[[nodiscard]] Frame lightness_channel(const Frame& rgb);

}  // namespace safegate::imaging
