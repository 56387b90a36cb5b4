#include "safegate/guidance/guidance.hpp"

#include <cmath>

#include "safegate/error.hpp"

namespace safegate::guidance {

const char* label(FacePosition p) {
    switch (p) {
        case FacePosition::Small: return "Face is small. come closer";
        case FacePosition::TopLeft: return "Face in top left";
        case FacePosition::TopRight: return "Face in top right";
        case FacePosition::BottomLeft: return "Face in bottom left";
        case FacePosition::BottomRight: return "Face in bottom right";
        case FacePosition::LeftEdge: return "Face in left edge";
        case FacePosition::TopEdge: return "Face in top edge";
        case FacePosition::RightEdge: return "Face in right edge";
        case FacePosition::BottomEdge: return "Face in bottom edge";
        case FacePosition::Center: return "Face in center";
    }
    return "Face in center";
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

FacePosition face_position(int window_w, int window_h, const FaceBox& box) {
    if (window_w <= 0 || window_h <= 0) throw InvalidParameter("face_position: window must be non-empty");
    if (box.x <= 0 || box.y <= 0 || box.width <= 0 || box.height <= 0) {
        throw InvalidParameter("face_position: face box fields must all be > 0");
    }
    const long long w = window_w;
    const long long h = window_h;
    const long long x = box.x;
    const long long y = box.y;
    const long long half_w = floor_div(box.width, 2);
    const long long half_h = floor_div(box.height, 2);

    // Corner margins of the box grown by half its size; x2 is offset from x1 and y2
    // repeats y1, which the corner and edge tests below rely on.
    const long long x1 = x - half_w;
    const long long y1 = y - half_h;
    const long long x2 = x1 + floor_div(3LL * box.width, 2);
    const long long y2 = y - half_h;
    const long long x3 = x - half_w;
    const long long y3 = y + floor_div(3LL * box.height, 2);
    const long long x4 = x + floor_div(3LL * box.width, 2);
    const long long y4 = y + floor_div(3LL * box.height, 2);

    if (static_cast<long long>(box.width) * box.height <= kSmallFaceArea) return FacePosition::Small;
    if (x1 <= 0 && y1 <= 0) return FacePosition::TopLeft;
    if (x2 >= w && y2 <= 0) return FacePosition::TopRight;
    if (x3 <= 0 && y3 >= h) return FacePosition::BottomLeft;
    if (x4 >= w && y4 >= h) return FacePosition::BottomRight;
    if (x1 <= 0) return FacePosition::LeftEdge;
    if (y1 <= 0) return FacePosition::TopEdge;
    if (x2 >= w) return FacePosition::RightEdge;
    if (y4 >= h) return FacePosition::BottomEdge;
    return FacePosition::Center;
}

RotationVerdict rotation_speed_check(const std::vector<OrientationSample>& samples, double max_rate) {
    if (samples.size() < 2) throw InvalidParameter("rotation_speed_check: need at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double dt = samples[i].t_seconds - samples[i - 1].t_seconds;
        if (!(dt > 0.0)) throw InvalidParameter("rotation_speed_check: timestamps must strictly increase");
        const double rate = std::abs(samples[i].angle_degrees - samples[i - 1].angle_degrees) / dt;
        if (rate > max_rate) return RotationVerdict::TooFast;
    }
    return RotationVerdict::Ok;
}

const char* label(RotationVerdict v) { return v == RotationVerdict::TooFast ? "too fast" : "ok"; }

std::vector<SelectedFrame> select_enrollment_frames(const std::vector<imaging::Frame>& video,
                                                    const FaceLocator& locate) {
    struct Eligible {
        std::size_t index;
        FaceBox box;
    };
    std::vector<Eligible> eligible;
    for (std::size_t i = 0; i < video.size(); ++i) {
        const auto box = locate(video[i], i);
        if (!box) continue;
        if (box->x <= 0 || box->y <= 0 || box->width <= 0 || box->height <= 0) continue;
        if (face_position(video[i].width(), video[i].height(), *box) != FacePosition::Center) continue;
        eligible.push_back({i, *box});
    }

    std::vector<SelectedFrame> out;
    if (eligible.empty()) return out;
    const std::size_t stride = (eligible.size() + kMaxEnrollmentFrames - 1) / kMaxEnrollmentFrames;
    for (std::size_t k = 0; k < eligible.size() && out.size() < kMaxEnrollmentFrames; k += stride) {
        const auto& e = eligible[k];
        const imaging::Rect r{e.box.x, e.box.y, e.box.width, e.box.height};
        out.push_back({e.index, imaging::crop(video[e.index], r)});
    }
    return out;
}

}  // namespace safegate::guidance
