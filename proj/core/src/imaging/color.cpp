#include "safegate/imaging/color.hpp"

#include <algorithm>
#include <cmath>

#include "safegate/error.hpp"

namespace safegate::imaging {

namespace {

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

double lab_f_inv(double f) {
    const double f3 = f * f * f;
    return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

const std::array<double, 256>& linear_lut() {
    static const std::array<double, 256> lut = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) t[i] = srgb_to_linear(i / 255.0);
        return t;
    }();
    return lut;
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

}  // namespace

Frame to_grayscale(const Frame& frame) {
    if (frame.channels() == 1) return frame;
    require_rgb(frame, "to_grayscale");
    Frame out(frame.width(), frame.height(), 1);
    const auto src = frame.data();
    auto dst = out.data();
    // Exact in integers: round-half-up of (299 R + 587 G + 114 B) / 1000.
    for (std::size_t i = 0, n = frame.pixel_count(); i < n; ++i) {
        const std::uint32_t r = src[3 * i];
        const std::uint32_t g = src[3 * i + 1];
        const std::uint32_t b = src[3 * i + 2];
        dst[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
    out.timestamp_ms = frame.timestamp_ms;
    out.camera_id = frame.camera_id;
    return out;
}

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const int mx = std::max({r, g, b});
    const int mn = std::min({r, g, b});
    const int delta = mx - mn;
    Hsv out;
    out.v = static_cast<std::uint8_t>(mx);
    out.s = mx == 0 ? 0 : to_byte(255.0 * delta / mx);
    if (delta == 0) {
        out.h = 0;
        return out;
    }
    double hue = 0.0;
    if (mx == r) {
        hue = 60.0 * (static_cast<double>(g) - b) / delta;
    } else if (mx == g) {
        hue = 120.0 + 60.0 * (static_cast<double>(b) - r) / delta;
    } else {
        hue = 240.0 + 60.0 * (static_cast<double>(r) - g) / delta;
    }
    if (hue < 0.0) hue += 360.0;
    long half = std::lround(hue / 2.0);
    if (half >= 180) half -= 180;
    out.h = static_cast<std::uint8_t>(half);
    return out;
}

std::vector<Hsv> rgb_to_hsv(const Frame& rgb) {
    require_rgb(rgb, "rgb_to_hsv");
    std::vector<Hsv> out(rgb.pixel_count());
    const auto src = rgb.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = rgb_to_hsv(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
    }
    return out;
}

Lab rgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const auto& lut = linear_lut();
    const double rl = lut[r];
    const double gl = lut[g];
    const double bl = lut[b];
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    const double fx = lab_f(x / kXn);
    const double fy = lab_f(y / kYn);
    const double fz = lab_f(z / kZn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<std::uint8_t, 3> lab_to_rgb(const Lab& lab) {
    const double fy = (lab.l + 16.0) / 116.0;
    const double fx = fy + lab.a / 500.0;
    const double fz = fy - lab.b / 200.0;
    const double x = kXn * lab_f_inv(fx);
    const double y = kYn * lab_f_inv(fy);
    const double z = kZn * lab_f_inv(fz);
    const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    auto enc = [](double c) { return to_byte(255.0 * linear_to_srgb(std::clamp(c, 0.0, 1.0))); };
    return {enc(rl), enc(gl), enc(bl)};
}

std::vector<Lab> to_lab(const Frame& rgb) {
    require_rgb(rgb, "to_lab");
    std::vector<Lab> out(rgb.pixel_count());
    const auto src = rgb.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = rgb_to_lab(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
    }
    return out;
}

Frame from_lab(const std::vector<Lab>& lab, int width, int height) {
    Frame out(width, height, 3);
    if (lab.size() != out.pixel_count()) {
        throw DimensionMismatch("from_lab: sample count does not match frame size");
    }
    auto dst = out.data();
    for (std::size_t i = 0; i < lab.size(); ++i) {
        const auto px = lab_to_rgb(lab[i]);
        dst[3 * i] = px[0];
        dst[3 * i + 1] = px[1];
        dst[3 * i + 2] = px[2];
    }
    return out;
}

Frame lightness_channel(const Frame& rgb) {
    require_rgb(rgb, "lightness_channel");
    Frame out(rgb.width(), rgb.height(), 1);
    const auto src = rgb.data();
    auto dst = out.data();
    for (std::size_t i = 0, n = rgb.pixel_count(); i < n; ++i) {
        const Lab lab = rgb_to_lab(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
        dst[i] = to_byte(lab.l * 255.0 / 100.0);
    }
    out.timestamp_ms = rgb.timestamp_ms;
    out.camera_id = rgb.camera_id;
    return out;
}

}  // namespace safegate::imaging
