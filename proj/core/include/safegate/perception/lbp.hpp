#pragma once

#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::perception {

inline constexpr int kLbpCropSize = 96;
inline constexpr int kLbpCellSize = 16;
inline constexpr int kLbpGrid = kLbpCropSize / kLbpCellSize;  // 6
inline constexpr int kLbpFeatureLength = kLbpGrid * kLbpGrid * 256;
inline constexpr int kLbpMinCropSide = 8;

/// Concatenated per-cell LBP histograms, each cell L1-normalized.
using FeatureVector = std::vector<double>;

/// Radius-1 LBP code at (x, y). Neighbour i runs clockwise from the top-left and sets
/// bit i when neighbour >= centre. Requires an interior pixel of a gray frame.
[[nodiscard]] int lbp_code(const imaging::Frame& gray, int x, int y);

/// Converts to gray, resizes to 96x96, codes every interior pixel and histograms a
/// 6x6 grid of 16x16 cells. Throws InvalidParameter if either crop side is < 8.
[[nodiscard]] FeatureVector extract_lbp_histogram(const imaging::Frame& face_crop);

}  // namespace safegate::perception
