#pragma once

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

// 3x3 square structuring element. Dilation treats pixels outside the frame as
// background, erosion treats them as foreground, so image borders never erode.

[[nodiscard]] Frame dilate3x3(const Frame& binary);
[[nodiscard]] Frame erode3x3(const Frame& binary);

/// (dilate, erode) applied `iterations` times.
[[nodiscard]] Frame binary_closing(const Frame& binary, int iterations = 1);

}  // namespace safegate::imaging
