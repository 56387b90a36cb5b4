// Reference implementations written straight from the defining formulas. They are
// deliberately naive and share no code with core/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::testing {

using imaging::Frame;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    Frame gray(int w, int h) {
        Frame f(w, h, 1);
        for (auto& v : f.data()) v = static_cast<std::uint8_t>(uniform(0, 255));
        return f;
    }

    /// Gray frame whose values cluster around a few random levels, so thresholds have
    /// something to separate.
    Frame clustered_gray(int w, int h) {
        const int modes = uniform(1, 4);
        std::vector<int> centres;
        for (int i = 0; i < modes; ++i) centres.push_back(uniform(0, 255));
        const int spread = uniform(0, 40);
        Frame f(w, h, 1);
        for (auto& v : f.data()) {
            const int c = centres[static_cast<std::size_t>(uniform(0, modes - 1))];
            v = static_cast<std::uint8_t>(std::clamp(c + uniform(-spread, spread), 0, 255));
        }
        return f;
    }

    Frame rgb(int w, int h) {
        Frame f(w, h, 3);
        for (auto& v : f.data()) v = static_cast<std::uint8_t>(uniform(0, 255));
        return f;
    }

    Frame binary(int w, int h, double density) {
        Frame f(w, h, 1);
        for (auto& v : f.data()) v = chance(density) ? 255 : 0;
        return f;
    }

private:
    std::mt19937_64 rng_;
};

/// Otsu by exhaustive search: the t in 0..255 minimising the intra-class variance
/// w0*var0 + w1*var1, classes [0,t] and [t+1,255]; first minimiser wins; 0 when no
/// split leaves both classes non-empty.
///
/// N * intra = sum(x^2) - S0^2/N0 - S1^2/N1, so minimising it means maximising
/// (S0^2*N1 + S1^2*N0) / (N0*N1), compared exactly by cross-multiplication.
inline int otsu_bruteforce(const Frame& gray) {
    __extension__ using i128 = __int128;
    std::vector<std::uint8_t> px(gray.data().begin(), gray.data().end());
    int best_t = 0;
    i128 best_num = -1;
    i128 best_den = 1;
    for (int t = 0; t < 256; ++t) {
        i128 n0 = 0, n1 = 0, s0 = 0, s1 = 0;
        for (auto v : px) {
            if (v <= t) {
                ++n0;
                s0 += v;
            } else {
                ++n1;
                s1 += v;
            }
        }
        if (n0 == 0 || n1 == 0) continue;
        const i128 num = s0 * s0 * n1 + s1 * s1 * n0;
        const i128 den = n0 * n1;
        if (best_num < 0 || num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
            best_t = t;
        }
    }
    return best_t;
}

struct OracleRegion {
    long long area = 0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// 8-connected regions of non-zero pixels by breadth-first flood fill, in the raster
/// order of each region's first pixel.
inline std::vector<OracleRegion> flood_fill_regions(const Frame& bin) {
    const int w = bin.width();
    const int h = bin.height();
    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<OracleRegion> out;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto idx = static_cast<std::size_t>(y) * w + x;
            if (bin.at(x, y) == 0 || seen[idx]) continue;
            OracleRegion r{0, x, y, x, y};
            std::queue<std::pair<int, int>> q;
            q.push({x, y});
            seen[idx] = 1;
            while (!q.empty()) {
                const auto [cx, cy] = q.front();
                q.pop();
                ++r.area;
                r.min_x = std::min(r.min_x, cx);
                r.min_y = std::min(r.min_y, cy);
                r.max_x = std::max(r.max_x, cx);
                r.max_y = std::max(r.max_y, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx;
                        const int ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const auto n = static_cast<std::size_t>(ny) * w + nx;
                        if (bin.at(nx, ny) == 0 || seen[n]) continue;
                        seen[n] = 1;
                        q.push({nx, ny});
                    }
                }
            }
            out.push_back(r);
        }
    }
    return out;
}

/// Face guidance rule transcribed branch by branch, with real-valued halving.
inline std::string algorithm1_label(double w, double h, double x, double y, double width, double height) {
    const double x1 = x - width / 2;
    const double y1 = y - height / 2;
    const double x2 = x1 + 3 * width / 2;
    const double y2 = y - height / 2;
    const double x3 = x - width / 2;
    const double y3 = y + 3 * height / 2;
    const double x4 = x + 3 * width / 2;
    const double y4 = y + 3 * height / 2;
    if (width * height <= 1024) return "Face is small. come closer";
    if (x1 <= 0 && y1 <= 0) return "Face in top left";
    if (x2 >= w && y2 <= 0) return "Face in top right";
    if (x3 <= 0 && y3 >= h) return "Face in bottom left";
    if (x4 >= w && y4 >= h) return "Face in bottom right";
    if (x1 <= 0) return "Face in left edge";
    if (y1 <= 0) return "Face in top edge";
    if (x2 >= w) return "Face in right edge";
    if (y4 >= h) return "Face in bottom edge";
    return "Face in center";
}

/// O = 255 * (I/255)^(1/gamma), unrounded.
inline double gamma_direct(int intensity, double gamma) {
    return 255.0 * std::pow(intensity / 255.0, 1.0 / gamma);
}

/// Copy of a frame's samples; safe to iterate when the frame is a temporary.
inline std::vector<std::uint8_t> pixels(const Frame& f) { return f.bytes(); }

/// Global histogram equalisation: O = round(255 * cdf(I) / N).
inline Frame global_equalize(const Frame& gray) {
    std::vector<long long> hist(256, 0);
    for (auto v : gray.data()) ++hist[v];
    std::vector<long long> cdf(256, 0);
    long long run = 0;
    for (int v = 0; v < 256; ++v) cdf[static_cast<std::size_t>(v)] = (run += hist[static_cast<std::size_t>(v)]);
    const double n = static_cast<double>(gray.pixel_count());
    Frame out = gray;
    for (auto& v : out.data()) v = static_cast<std::uint8_t>(std::lround(255.0 * static_cast<double>(cdf[v]) / n));
    return out;
}

/// Chi-square distance written out term by term.
inline double chi_square_direct(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d / (a[i] + b[i] + 1e-10);
    }
    return s;
}

/// Luma with the textbook real-valued weights, rounded half up.
inline int luma_direct(int r, int g, int b) {
    return static_cast<int>(std::floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5));
}

/// Every non-empty sentence terminated by '.', '!' or '?'.
inline int sentence_count_direct(const std::string& s) {
    int n = 0;
    bool content = false;
    for (char c : s) {
        if (c == '.' || c == '!' || c == '?') {
            if (content) ++n;
            content = false;
        } else if (c != ' ') {
            content = true;
        }
    }
    return n + (content ? 1 : 0);
}

}  // namespace safegate::testing
