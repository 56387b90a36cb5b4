#pragma once

#include <cstdint>
#include <vector>

#include "safegate/change/change_detection.hpp"

namespace safegate::change {

struct CorpusOptions {
    int pairs = 240;
    int width = 160;
    int height = 120;
    int min_blob = 10;
    int max_blob = 60;
    double noise_sigma = 4.0;
    /// Fraction of pairs with no blob at all.
    double quiet_fraction = 0.25;
    /// Ground truth: a blob counts as activity iff its area is at least this.
    long long significant_area = 400;
    std::uint64_t seed = 20210401;
};

struct CorpusPair {
    LabeledPair pair;
    /// Blob rectangle in `curr`, empty for quiet pairs.
    Rect blob;
};

/// Labeled frame pairs: a textured static background, Gaussian sensor noise on every
/// frame, and at most one rectangular object that appears between prev and curr.
[[nodiscard]] std::vector<CorpusPair> make_change_corpus(const CorpusOptions& options);

}  // namespace safegate::change
