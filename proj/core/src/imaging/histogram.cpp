#include "safegate/imaging/histogram.hpp"

#include <algorithm>

namespace safegate::imaging {

std::uint64_t Histogram256::count_range(int lo, int hi) const {
    lo = std::max(lo, 0);
    hi = std::min(hi, 255);
    std::uint64_t n = 0;
    for (int v = lo; v <= hi; ++v) n += bins[static_cast<std::size_t>(v)];
    return n;
}

double Histogram256::fraction_range(int lo, int hi) const {
    if (total == 0) return 0.0;
    return static_cast<double>(count_range(lo, hi)) / static_cast<double>(total);
}

Histogram256 intensity_histogram(const Frame& gray) {
    require_gray(gray, "intensity_histogram");
    Histogram256 h;
    for (const auto v : gray.data()) ++h.bins[v];
    h.total = gray.pixel_count();
    return h;
}

}  // namespace safegate::imaging
