#pragma once

#include <cstdint>

#include "safegate/imaging/frame.hpp"

namespace safegate::perception {

struct FaceJitter {
    int max_shift = 1;          // pixels, each axis
    int max_brightness = 12;    // additive offset range
    double noise_sigma = 1.5;   // Gaussian sensor noise
};

/// Deterministic procedural "face" texture for an identity: a rendered 96x96 gray
/// image whose structure depends only on `identity_seed`. `sample_seed` drives the
/// jitter (sub-cell shift, brightness offset, noise); sample 0 with zero jitter is
/// the canonical crop.
[[nodiscard]] imaging::Frame synthetic_face(std::uint64_t identity_seed, std::uint64_t sample_seed,
                                            const FaceJitter& jitter = {});

}  // namespace safegate::perception
