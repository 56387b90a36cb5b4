#include "safegate/perception/hair_color.hpp"

#include "safegate/error.hpp"
#include "safegate/imaging/histogram.hpp"

namespace safegate::perception {

const char* to_string(HairColor c) {
    switch (c) {
        case HairColor::Black: return "black";
        case HairColor::Brown: return "brown";
        case HairColor::Blond: return "blond";
        case HairColor::Gray: return "gray";
    }
    return "gray";
}

HairColor classify_hair_color(const imaging::Frame& head_patch, const HairColorRule& rule) {
    if (head_patch.empty()) throw InvalidParameter("classify_hair_color: empty patch");
    const auto hist = imaging::intensity_histogram(imaging::to_grayscale(head_patch));
    if (hist.fraction_range(0, rule.black_bins - 1) >= rule.black_fraction) return HairColor::Black;
    if (head_patch.channels() != 3) return HairColor::Gray;

    const auto hsv = imaging::rgb_to_hsv(head_patch);
    std::size_t brown = 0;
    std::size_t blond = 0;
    for (const auto& p : hsv) {
        brown += rule.brown.contains(p);
        blond += rule.blond.contains(p);
    }
    const double n = static_cast<double>(hsv.size());
    if (static_cast<double>(brown) / n >= rule.pixel_fraction) return HairColor::Brown;
    if (static_cast<double>(blond) / n >= rule.pixel_fraction) return HairColor::Blond;
    return HairColor::Gray;
}

}  // namespace safegate::perception
