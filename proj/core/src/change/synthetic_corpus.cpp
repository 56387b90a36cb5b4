#include "safegate/change/synthetic_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "safegate/error.hpp"

namespace safegate::change {

namespace {

std::uint8_t clamp_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

// Static scene: a smooth gradient plus fixed fine texture, kept in [40, 150] so that
// bright objects (220..240) always contrast with it by far more than the noise.
std::vector<double> make_background(int w, int h, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> tex(-10.0, 10.0);
    std::uniform_real_distribution<double> phase(0.0, 6.28);
    const double px = phase(rng);
    const double py = phase(rng);
    std::vector<double> bg(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double base = 95.0 + 30.0 * std::sin(px + x * 0.05) * std::cos(py + y * 0.04);
            bg[static_cast<std::size_t>(y) * w + x] = base + tex(rng);
        }
    }
    return bg;
}

Frame render(const std::vector<double>& bg, int w, int h, const Rect& blob, double blob_value,
             double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, sigma);
    Frame f(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = blob.contains(x, y) ? blob_value : bg[static_cast<std::size_t>(y) * w + x];
            f.at(x, y) = clamp_byte(v + (sigma > 0 ? noise(rng) : 0.0));
        }
    }
    return f;
}

}  // namespace

std::vector<CorpusPair> make_change_corpus(const CorpusOptions& o) {
    if (o.pairs <= 0 || o.width <= o.max_blob || o.height <= o.max_blob || o.min_blob < 1 ||
        o.min_blob > o.max_blob || o.noise_sigma < 0) {
        throw InvalidParameter("make_change_corpus: inconsistent options");
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> any_side(o.min_blob, o.max_blob);
    const int small_max = std::max(o.min_blob,
                                   static_cast<int>(std::floor(std::sqrt(static_cast<double>(o.significant_area - 1)))));
    std::uniform_int_distribution<int> small_side(o.min_blob, std::min(small_max, o.max_blob));
    std::uniform_real_distribution<double> bright(220.0, 240.0);

    std::vector<CorpusPair> corpus;
    corpus.reserve(static_cast<std::size_t>(o.pairs));
    for (int i = 0; i < o.pairs; ++i) {
        const auto bg = make_background(o.width, o.height, rng);
        CorpusPair item;
        if (unit(rng) >= o.quiet_fraction) {
            // Roughly 40% of objects are nuisance-sized so both label classes are well populated.
            const bool small = unit(rng) < 0.4;
            const int bw = small ? small_side(rng) : any_side(rng);
            const int bh = small ? small_side(rng) : any_side(rng);
            std::uniform_int_distribution<int> ux(0, o.width - bw);
            std::uniform_int_distribution<int> uy(0, o.height - bh);
            item.blob = {ux(rng), uy(rng), bw, bh};
        }
        const double value = bright(rng);
        item.pair.prev = render(bg, o.width, o.height, Rect{}, 0.0, o.noise_sigma, rng);
        item.pair.curr = render(bg, o.width, o.height, item.blob, value, o.noise_sigma, rng);
        item.pair.prev.timestamp_ms = 200LL * (2 * i);
        item.pair.curr.timestamp_ms = 200LL * (2 * i + 1);
        item.pair.active = item.blob.area() >= o.significant_area;
        corpus.push_back(std::move(item));
    }
    return corpus;
}

}  // namespace safegate::change
