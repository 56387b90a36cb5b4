#pragma once

#include <array>
#include <cstdint>

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

struct Histogram256 {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;

    /// Pixels with value in [lo, hi], inclusive.
    [[nodiscard]] std::uint64_t count_range(int lo, int hi) const;
    /// count_range(lo, hi) / total, or 0 for an empty histogram.
    [[nodiscard]] double fraction_range(int lo, int hi) const;
};

[[nodiscard]] Histogram256 intensity_histogram(const Frame& gray);

}  // namespace safegate::imaging
