#pragma once

#include <cstdint>

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

/// out = 255 where gray > t, else 0.
[[nodiscard]] Frame binary_threshold(const Frame& gray, int t);

/// out = 255 where gray > (Gaussian-weighted block mean) - c. `block` must be odd and >= 3.
///
/// The kernel matches the usual adaptive-threshold sigma, 0.3*((block-1)/2 - 1) + 0.8,
/// with replicated borders.
[[nodiscard]] Frame adaptive_threshold_gaussian(const Frame& gray, int block, double c);

struct OtsuResult {
    int threshold = 0;
    Frame binary;
};

/// Threshold maximizing between-class variance; ties resolve to the smallest t.
/// Class 0 is [0, t], class 1 is [t+1, 255], matching binary_threshold.
[[nodiscard]] int otsu_level(const Frame& gray);
[[nodiscard]] OtsuResult otsu_threshold(const Frame& gray);

}  // namespace safegate::imaging
