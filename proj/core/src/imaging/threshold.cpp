#include "safegate/imaging/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "safegate/error.hpp"
#include "safegate/imaging/histogram.hpp"

namespace safegate::imaging {

Frame binary_threshold(const Frame& gray, int t) {
    require_gray(gray, "binary_threshold");
    Frame out(gray.width(), gray.height(), 1);
    const auto src = gray.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = static_cast<int>(src[i]) > t ? 255 : 0;
    }
    out.timestamp_ms = gray.timestamp_ms;
    out.camera_id = gray.camera_id;
    return out;
}

namespace {

std::vector<double> gaussian_kernel(int size) {
    const double sigma = 0.3 * ((size - 1) * 0.5 - 1.0) + 0.8;
    std::vector<double> k(static_cast<std::size_t>(size));
    const int half = size / 2;
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - half;
        k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        sum += k[static_cast<std::size_t>(i)];
    }
    for (auto& v : k) v /= sum;
    return k;
}

}  // namespace

Frame adaptive_threshold_gaussian(const Frame& gray, int block, double c) {
    require_gray(gray, "adaptive_threshold_gaussian");
    if (block < 3 || block % 2 == 0) {
        throw InvalidParameter("adaptive_threshold_gaussian: block must be odd and >= 3, got " +
                               std::to_string(block));
    }
    const int w = gray.width();
    const int h = gray.height();
    const int half = block / 2;
    const auto kernel = gaussian_kernel(block);
    const auto src = gray.data();

    // Separable blur with replicated borders.
    std::vector<double> horiz(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -half; k <= half; ++k) {
                const int xx = std::clamp(x + k, 0, w - 1);
                acc += kernel[static_cast<std::size_t>(k + half)] *
                       src[static_cast<std::size_t>(y) * w + xx];
            }
            horiz[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }

    Frame out(w, h, 1);
    auto dst = out.data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double mean = 0.0;
            for (int k = -half; k <= half; ++k) {
                const int yy = std::clamp(y + k, 0, h - 1);
                mean += kernel[static_cast<std::size_t>(k + half)] *
                        horiz[static_cast<std::size_t>(yy) * w + x];
            }
            const auto idx = static_cast<std::size_t>(y) * w + x;
            dst[idx] = static_cast<double>(src[idx]) > mean - c ? 255 : 0;
        }
    }
    out.timestamp_ms = gray.timestamp_ms;
    out.camera_id = gray.camera_id;
    return out;
}

namespace {

__extension__ using u128 = unsigned __int128;

// Between-class variance for a split is proportional to
//   (N*S0 - N0*S)^2 / (N0*N1),
// so candidates compare exactly by cross-multiplication. The products fit in
// 128 bits for frames up to 2^19 pixels; larger frames fall back to long double.
constexpr std::uint64_t kExactPixelLimit = 1ULL << 19;

}  // namespace

int otsu_level(const Frame& gray) {
    const Histogram256 hist = intensity_histogram(gray);
    const std::uint64_t n = hist.total;
    std::uint64_t total_sum = 0;
    for (int v = 0; v < 256; ++v) total_sum += static_cast<std::uint64_t>(v) * hist.bins[v];

    int best_t = 0;
    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;

    if (n <= kExactPixelLimit) {
        u128 best_num = 0;
        u128 best_den = 1;
        for (int t = 0; t < 256; ++t) {
            n0 += hist.bins[t];
            s0 += static_cast<std::uint64_t>(t) * hist.bins[t];
            const std::uint64_t n1 = n - n0;
            if (n0 == 0 || n1 == 0) continue;
            const auto lhs = static_cast<u128>(n) * s0;
            const auto rhs = static_cast<u128>(n0) * total_sum;
            const u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
            const u128 num = diff * diff;
            const u128 den = static_cast<u128>(n0) * n1;
            // num/den > best_num/best_den, strictly, so the earliest maximum wins.
            if (num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
                best_t = t;
            }
        }
        return best_t;
    }

    long double best = 0.0L;
    for (int t = 0; t < 256; ++t) {
        n0 += hist.bins[t];
        s0 += static_cast<std::uint64_t>(t) * hist.bins[t];
        const std::uint64_t n1 = n - n0;
        if (n0 == 0 || n1 == 0) continue;
        const long double d = static_cast<long double>(n) * s0 - static_cast<long double>(n0) * total_sum;
        const long double score = d * d / (static_cast<long double>(n0) * n1);
        if (score > best) {
            best = score;
            best_t = t;
        }
    }
    return best_t;
}

OtsuResult otsu_threshold(const Frame& gray) {
    const int t = otsu_level(gray);
    return {t, binary_threshold(gray, t)};
}

}  // namespace safegate::imaging
