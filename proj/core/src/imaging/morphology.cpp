#include "safegate/imaging/morphology.hpp"

#include <algorithm>

#include "safegate/error.hpp"

namespace safegate::imaging {

namespace {

// Separable 3x3 min/max: a row pass followed by a column pass.
template <bool Dilate>
Frame morph3x3(const Frame& in) {
    require_gray(in, Dilate ? "dilate3x3" : "erode3x3");
    const int w = in.width();
    const int h = in.height();
    constexpr std::uint8_t outside = Dilate ? 0 : 255;
    auto pick = [](std::uint8_t a, std::uint8_t b) { return Dilate ? std::max(a, b) : std::min(a, b); };

    const auto src = in.data();
    std::vector<std::uint8_t> rows(src.size());
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* s = src.data() + static_cast<std::size_t>(y) * w;
        std::uint8_t* r = rows.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const std::uint8_t left = x > 0 ? s[x - 1] : outside;
            const std::uint8_t right = x + 1 < w ? s[x + 1] : outside;
            r[x] = pick(pick(left, s[x]), right);
        }
    }

    Frame out(w, h, 1);
    auto dst = out.data();
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* mid = rows.data() + static_cast<std::size_t>(y) * w;
        const std::uint8_t* up = y > 0 ? mid - w : nullptr;
        const std::uint8_t* down = y + 1 < h ? mid + w : nullptr;
        std::uint8_t* d = dst.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            d[x] = pick(pick(up ? up[x] : outside, mid[x]), down ? down[x] : outside);
        }
    }
    out.timestamp_ms = in.timestamp_ms;
    out.camera_id = in.camera_id;
    return out;
}

}  // namespace

Frame dilate3x3(const Frame& binary) { return morph3x3<true>(binary); }

Frame erode3x3(const Frame& binary) { return morph3x3<false>(binary); }

Frame binary_closing(const Frame& binary, int iterations) {
    if (iterations < 0) throw InvalidParameter("binary_closing: iterations must be >= 0");
    Frame out = binary;
    for (int i = 0; i < iterations; ++i) out = erode3x3(dilate3x3(out));
    return out;
}

}  // namespace safegate::imaging
