#include "safegate/perception/synthetic_faces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "safegate/perception/lbp.hpp"

namespace safegate::perception {

namespace {

struct Wave {
    double amplitude;
    double fx;
    double fy;
    double phase;
};

struct Blob {
    double cx;
    double cy;
    double rx;
    double ry;
    double level;
};

struct Identity {
    std::array<Wave, 4> waves{};
    std::array<Blob, 7> blobs{};
    double skin = 0.0;
    double background = 0.0;
};

Identity make_identity(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Identity id;
    for (auto& w : id.waves) {
        const double freq = 0.12 + 0.30 * u(rng);
        const double angle = 3.14159265 * u(rng);
        w = {12.0 + 18.0 * u(rng), freq * std::cos(angle), freq * std::sin(angle), 6.2831853 * u(rng)};
    }
    id.skin = 120.0 + 40.0 * u(rng);
    id.background = 50.0 + 30.0 * u(rng);
    // Face oval, two eyes, nose, mouth and two identity-specific marks.
    id.blobs[0] = {48 + 6 * (u(rng) - 0.5), 50 + 6 * (u(rng) - 0.5), 30 + 8 * u(rng), 38 + 6 * u(rng), 0.0};
    const double eye_dx = 13 + 6 * u(rng);
    const double eye_y = 36 + 8 * u(rng);
    const double eye_r = 4 + 4 * u(rng);
    id.blobs[1] = {48 - eye_dx, eye_y, eye_r + 2, eye_r, -60.0 - 30 * u(rng)};
    id.blobs[2] = {48 + eye_dx, eye_y, eye_r + 2, eye_r, -60.0 - 30 * u(rng)};
    id.blobs[3] = {48, 52 + 6 * u(rng), 3 + 3 * u(rng), 7 + 5 * u(rng), 25.0 + 20 * u(rng)};
    id.blobs[4] = {48, 70 + 6 * u(rng), 9 + 8 * u(rng), 3 + 3 * u(rng), -50.0 - 30 * u(rng)};
    for (std::size_t i = 5; i < id.blobs.size(); ++i) {
        id.blobs[i] = {20 + 56 * u(rng), 20 + 56 * u(rng), 4 + 8 * u(rng), 4 + 8 * u(rng), 60 * (u(rng) - 0.5)};
    }
    return id;
}

double inside(const Blob& b, double x, double y) {
    const double dx = (x - b.cx) / b.rx;
    const double dy = (y - b.cy) / b.ry;
    return dx * dx + dy * dy <= 1.0 ? 1.0 : 0.0;
}

}  // namespace

imaging::Frame synthetic_face(std::uint64_t identity_seed, std::uint64_t sample_seed, const FaceJitter& jitter) {
    const Identity id = make_identity(identity_seed);
    std::mt19937_64 rng(sample_seed * 0xD1B54A32D192ED03ULL + identity_seed);
    int dx = 0;
    int dy = 0;
    int offset = 0;
    double sigma = 0.0;
    if (sample_seed != 0) {
        std::uniform_int_distribution<int> shift(-jitter.max_shift, jitter.max_shift);
        std::uniform_int_distribution<int> bright(-jitter.max_brightness, jitter.max_brightness);
        dx = shift(rng);
        dy = shift(rng);
        offset = bright(rng);
        sigma = jitter.noise_sigma;
    }
    std::normal_distribution<double> noise(0.0, sigma > 0 ? sigma : 1.0);

    imaging::Frame f(kLbpCropSize, kLbpCropSize, 1);
    for (int y = 0; y < kLbpCropSize; ++y) {
        for (int x = 0; x < kLbpCropSize; ++x) {
            const double px = x + dx;
            const double py = y + dy;
            double v = inside(id.blobs[0], px, py) > 0 ? id.skin : id.background;
            for (std::size_t i = 1; i < id.blobs.size(); ++i) v += id.blobs[i].level * inside(id.blobs[i], px, py);
            for (const auto& w : id.waves) v += w.amplitude * std::sin(w.fx * px + w.fy * py + w.phase);
            v += offset;
            if (sigma > 0) v += noise(rng);
            f.at(x, y) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
        }
    }
    return f;
}

}  // namespace safegate::perception
