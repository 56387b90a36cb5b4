#pragma once

#include <cstdint>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

struct RegionStats {
    int label = 0;
    long long area = 0;
    Rect bbox;
};

/// Per-pixel labels: 0 is background, regions are 1..K in raster order of first pixel.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::vector<RegionStats> regions;

    [[nodiscard]] std::int32_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }
    [[nodiscard]] int count() const { return static_cast<int>(regions.size()); }
};

/// 8-connected labeling of non-zero pixels.
[[nodiscard]] LabelMap connected_components(const Frame& binary);

}  // namespace safegate::imaging
