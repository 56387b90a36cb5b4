#include "safegate/perception/lbp.hpp"

#include <array>

#include "safegate/error.hpp"
#include "safegate/imaging/color.hpp"

namespace safegate::perception {

namespace {

// Clockwise from the top-left neighbour.
constexpr std::array<std::array<int, 2>, 8> kNeighbours{{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

}  // namespace

int lbp_code(const imaging::Frame& gray, int x, int y) {
    const int centre = gray.at(x, y);
    int code = 0;
    for (std::size_t i = 0; i < kNeighbours.size(); ++i) {
        if (gray.at(x + kNeighbours[i][0], y + kNeighbours[i][1]) >= centre) code |= 1 << i;
    }
    return code;
}

FeatureVector extract_lbp_histogram(const imaging::Frame& face_crop) {
    if (face_crop.width() < kLbpMinCropSide || face_crop.height() < kLbpMinCropSide) {
        throw InvalidParameter("extract_lbp_histogram: crop must be at least 8x8, got " +
                               std::to_string(face_crop.width()) + "x" + std::to_string(face_crop.height()));
    }
    const imaging::Frame gray =
        imaging::resize_bilinear(imaging::to_grayscale(face_crop), kLbpCropSize, kLbpCropSize);

    FeatureVector features(kLbpFeatureLength, 0.0);
    std::array<int, kLbpGrid * kLbpGrid> cell_counts{};
    for (int y = 1; y < kLbpCropSize - 1; ++y) {
        for (int x = 1; x < kLbpCropSize - 1; ++x) {
            const int cell = (y / kLbpCellSize) * kLbpGrid + x / kLbpCellSize;
            features[static_cast<std::size_t>(cell) * 256 + lbp_code(gray, x, y)] += 1.0;
            ++cell_counts[static_cast<std::size_t>(cell)];
        }
    }
    for (std::size_t cell = 0; cell < cell_counts.size(); ++cell) {
        if (cell_counts[cell] == 0) continue;
        const double inv = 1.0 / cell_counts[cell];
        for (std::size_t b = 0; b < 256; ++b) features[cell * 256 + b] *= inv;
    }
    return features;
}

}  // namespace safegate::perception
