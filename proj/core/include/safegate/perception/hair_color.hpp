#pragma once

#include <cstdint>
#include <string>

#include "safegate/imaging/color.hpp"
#include "safegate/imaging/frame.hpp"

namespace safegate::perception {

enum class HairColor { Black, Brown, Blond, Gray };

[[nodiscard]] const char* to_string(HairColor c);

struct HsvRange {
    imaging::Hsv lo;
    imaging::Hsv hi;
    [[nodiscard]] bool contains(const imaging::Hsv& p) const {
        return p.h >= lo.h && p.h <= hi.h && p.s >= lo.s && p.s <= hi.s && p.v >= lo.v && p.v <= hi.v;
    }
};

struct HairColorRule {
    HsvRange brown{{10, 100, 20}, {20, 255, 200}};
    HsvRange blond{{8, 15, 50}, {20, 240, 230}};
    double pixel_fraction = 0.60;
    int black_bins = 100;
    double black_fraction = 0.50;
};

/// black (intensity bins 0..black_bins-1 hold >= black_fraction) -> brown -> blond -> gray.
[[nodiscard]] HairColor classify_hair_color(const imaging::Frame& head_patch, const HairColorRule& rule = {});

}  // namespace safegate::perception
