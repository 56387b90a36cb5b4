#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "safegate/error.hpp"
#include "safegate/illumination/illumination.hpp"
#include "safegate/imaging/color.hpp"
#include "safegate/imaging/histogram.hpp"

using namespace safegate;
using namespace safegate::illumination;
using imaging::Frame;
using safegate::testing::Gen;

namespace {

double mean(const Frame& f) {
    const auto d = f.data();
    return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
}

Frame split_gray(int w, int h, double fraction, std::uint8_t a, std::uint8_t b, int channels = 1) {
    Frame f(w, h, channels, b);
    const auto cut = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(f.pixel_count())));
    for (std::size_t i = 0; i < cut; ++i)
        for (int c = 0; c < channels; ++c) f.data()[i * channels + c] = a;
    return f;
}

}  // namespace

TEST(Lighting, Examples) {
    auto black = assess_lighting(Frame(10, 10, 3, 0));
    EXPECT_DOUBLE_EQ(black.dark_fraction, 1.0);
    EXPECT_EQ(black.condition, LightingCondition::Poor);
    auto white = assess_lighting(Frame(10, 10, 3, 255));
    EXPECT_DOUBLE_EQ(white.dark_fraction, 0.0);
    EXPECT_EQ(white.condition, LightingCondition::Good);
    auto mixed = assess_lighting(split_gray(10, 10, 0.8, 30, 200));
    EXPECT_DOUBLE_EQ(mixed.dark_fraction, 0.8);
    EXPECT_EQ(mixed.condition, LightingCondition::Poor);
}

TEST(Lighting, BoundaryAtSeventyFivePercent) {
    EXPECT_EQ(assess_lighting(split_gray(20, 20, 0.75, 74, 75)).condition, LightingCondition::Poor);
    EXPECT_EQ(assess_lighting(split_gray(20, 20, 0.7475, 74, 75)).condition, LightingCondition::Good);
}

TEST(Lighting, PermutationInvariant) {
    Gen gen(1);
    for (int trial = 0; trial < 20; ++trial) {
        Frame f = gen.clustered_gray(30, 20);
        const auto before = assess_lighting(f);
        std::shuffle(f.data().begin(), f.data().end(), gen.engine());
        const auto after = assess_lighting(f);
        EXPECT_EQ(before.condition, after.condition);
        EXPECT_DOUBLE_EQ(before.dark_fraction, after.dark_fraction);
    }
}

TEST(SelectGamma, Examples) {
    EXPECT_DOUBLE_EQ(select_gamma(split_gray(20, 20, 0.6, 40, 128, 3)).gamma, kDarkGamma);
    EXPECT_DOUBLE_EQ(select_gamma(split_gray(20, 20, 0.6, 240, 128, 3)).gamma, kOverexposedGamma);
    EXPECT_DOUBLE_EQ(select_gamma(Frame(20, 20, 3, 128)).gamma, 1.0);
}

TEST(Gamma, Examples) {
    Frame f(256, 1, 1);
    for (int i = 0; i < 256; ++i) f.at(i, 0) = static_cast<std::uint8_t>(i);
    EXPECT_EQ(gamma_correct(f, {1.0}), f);
    EXPECT_EQ(gamma_correct(Frame(1, 1, 1, 64), {2.0}).at(0, 0), 128);
    for (double g : {0.3, 0.7, 1.5, 2.0, 3.3}) {
        const auto lut = gamma_lut(g);
        EXPECT_EQ(lut[0], 0);
        EXPECT_EQ(lut[255], 255);
    }
    EXPECT_THROW((void)gamma_correct(f, {0.0}), InvalidParameter);
    EXPECT_THROW((void)gamma_correct(f, {-1.0}), InvalidParameter);
}

TEST(Gamma, MatchesDirectEvaluation) {
    for (double g : {0.4, 0.7, 1.0, 1.5, 2.0, 2.5}) {
        const auto lut = gamma_lut(g);
        for (int i = 0; i < 256; ++i) EXPECT_LE(std::abs(lut[i] - safegate::testing::gamma_direct(i, g)), 0.5 + 1e-9);
    }
}

TEST(Gamma, MonotoneAndDirectional) {
    Gen gen(2);
    for (int trial = 0; trial < 50; ++trial) {
        const double g = gen.real(0.2, 5.0);
        const auto lut = gamma_lut(g);
        for (int i = 1; i < 256; ++i) EXPECT_LE(lut[i - 1], lut[i]);
        for (int i = 0; i < 256; ++i) {
            if (g < 1.0) EXPECT_LE(lut[i], i);
            if (g > 1.0) EXPECT_GE(lut[i], i);
        }
    }
}

TEST(Gamma, InverseWithinTwoLevels) {
    Frame f(256, 1, 1);
    for (int i = 0; i < 256; ++i) f.at(i, 0) = static_cast<std::uint8_t>(i);
    for (double g : {0.7, 1.5, 2.0}) {
        const Frame forward = gamma_correct(f, {g});
        const Frame back = gamma_correct(forward, {1.0 / g});
        for (int i = 0; i < 256; ++i) {
            // Darkening crushes the deepest shadows to 0, which no inverse can undo.
            if (forward.at(i, 0) == 0 && i > 0) continue;
            EXPECT_LE(std::abs(back.at(i, 0) - i), 2) << "gamma " << g << " input " << i;
        }
    }
}

TEST(ClipHistogram, ConservesCountAndRespectsLimit) {
    Gen gen(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<std::uint64_t, 256> h{};
        std::uint64_t total = 0;
        for (auto& b : h) total += (b = static_cast<std::uint64_t>(gen.chance(0.2) ? gen.uniform(0, 500) : 0));
        const auto limit = static_cast<std::uint64_t>(gen.uniform(1, 200));
        std::uint64_t excess = 0;
        for (auto b : h) excess += b > limit ? b - limit : 0;
        const auto c = clip_histogram(h, limit);
        std::uint64_t after = 0;
        for (auto b : c) after += b;
        EXPECT_EQ(after, total);
        const std::uint64_t bound = limit + (excess + 255) / 256;
        for (auto b : c) EXPECT_LE(b, bound);
    }
}

TEST(ClipHistogram, BoundFormula) {
    EXPECT_EQ(clip_bound(2.0, 64 * 64), 32u);
    EXPECT_EQ(clip_bound(0.01, 100), 1u);
}

TEST(Clahe, ConstantInConstantOut) {
    for (int v : {0, 37, 128, 255}) {
        const Frame out = clahe(Frame(67, 45, 1, static_cast<std::uint8_t>(v)));
        const auto first = out.data()[0];
        for (auto p : out.data()) EXPECT_EQ(p, first);
    }
}

TEST(Clahe, SingleTileHugeClipIsGlobalEqualisation) {
    Gen gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame f = gen.clustered_gray(gen.uniform(8, 70), gen.uniform(8, 70));
        const Frame out = clahe(f, {1e9, 1, 1});
        const Frame expected = safegate::testing::global_equalize(f);
        for (std::size_t i = 0; i < f.data().size(); ++i)
            EXPECT_LE(std::abs(int(out.data()[i]) - int(expected.data()[i])), 1);
    }
}

TEST(Clahe, StretchesLowContrastTiles) {
    Frame f(128, 128, 1);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) f.at(x, y) = static_cast<std::uint8_t>(x < 64 ? 20 + (x + y) % 12 : 200 + (x + y) % 12);
    const Frame out = clahe(f, {2.0, 2, 2});
    auto tile_std = [](const Frame& img, int tx, int ty) {
        double s = 0, s2 = 0;
        for (int y = ty * 64; y < ty * 64 + 64; ++y)
            for (int x = tx * 64; x < tx * 64 + 64; ++x) {
                s += img.at(x, y);
                s2 += double(img.at(x, y)) * img.at(x, y);
            }
        const double n = 64.0 * 64.0;
        return std::sqrt(std::max(0.0, s2 / n - (s / n) * (s / n)));
    };
    for (int ty = 0; ty < 2; ++ty)
        for (int tx = 0; tx < 2; ++tx) EXPECT_GE(tile_std(out, tx, ty) + 1e-9, tile_std(f, tx, ty));
}

TEST(Clahe, RejectsBadParameters) {
    const Frame f(8, 8, 1, 5);
    EXPECT_THROW((void)clahe(f, {0.0, 2, 2}), InvalidParameter);
    EXPECT_THROW((void)clahe(f, {2.0, 0, 2}), InvalidParameter);
    EXPECT_THROW((void)clahe(Frame(8, 8, 3, 5)), InvalidParameter);
}

TEST(Normalize, BalancedFrameUsesIdentityGamma) {
    Gen gen(6);
    Frame f(64, 48, 3);
    for (auto& v : f.data()) v = static_cast<std::uint8_t>(gen.uniform(90, 170));
    EXPECT_DOUBLE_EQ(normalize_illumination_report(f).gamma.gamma, 1.0);
}

TEST(Normalize, DarkBrightensAndOverexposedDarkens) {
    Gen gen(7);
    Frame dark(64, 48, 3), bright(64, 48, 3);
    for (auto& v : dark.data()) v = static_cast<std::uint8_t>(gen.uniform(5, 40));
    for (auto& v : bright.data()) v = static_cast<std::uint8_t>(gen.uniform(225, 250));
    const auto d = normalize_illumination_report(dark);
    EXPECT_DOUBLE_EQ(d.gamma.gamma, kDarkGamma);
    EXPECT_GT(mean(d.frame), mean(dark));
    const auto b = normalize_illumination_report(bright);
    EXPECT_DOUBLE_EQ(b.gamma.gamma, kOverexposedGamma);
    EXPECT_LT(mean(gamma_correct(bright, b.gamma)), mean(bright));
    EXPECT_LT(mean(b.frame), mean(bright));
}
