#include "safegate/imaging/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "safegate/error.hpp"

namespace safegate::imaging {

namespace {

void validate_shape(int width, int height, int channels) {
    if (width <= 0 || height <= 0) {
        throw InvalidParameter("frame dimensions must be positive, got " + std::to_string(width) +
                               "x" + std::to_string(height));
    }
    if (channels != 1 && channels != 3) {
        throw InvalidParameter("frame must have 1 or 3 channels, got " + std::to_string(channels));
    }
}

}  // namespace

Frame::Frame(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
    validate_shape(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Frame::Frame(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    validate_shape(width, height, channels);
    if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
        throw InvalidParameter("frame data length " + std::to_string(data_.size()) +
                               " does not match " + std::to_string(width) + "x" +
                               std::to_string(height) + "x" + std::to_string(channels));
    }
}

void require_gray(const Frame& frame, const char* what) {
    if (frame.channels() != 1) {
        throw InvalidParameter(std::string(what) + ": expected a single-channel frame");
    }
}

void require_rgb(const Frame& frame, const char* what) {
    if (frame.channels() != 3) {
        throw InvalidParameter(std::string(what) + ": expected a 3-channel frame");
    }
}

void require_same_size(const Frame& a, const Frame& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
    }
}

Rect clip_to(const Rect& roi, const Rect& bounds) {
    const int x0 = std::max(roi.x, bounds.x);
    const int y0 = std::max(roi.y, bounds.y);
    const int x1 = std::min(roi.x + roi.width, bounds.x + bounds.width);
    const int y1 = std::min(roi.y + roi.height, bounds.y + bounds.height);
    if (x1 <= x0 || y1 <= y0) return {x0, y0, 0, 0};
    return {x0, y0, x1 - x0, y1 - y0};
}

Frame crop(const Frame& frame, Rect roi) {
    const Rect r = clip_to(roi, frame.bounds());
    if (r.empty()) throw InvalidParameter("crop: region lies outside the frame");
    Frame out(r.width, r.height, frame.channels());
    const auto ch = static_cast<std::size_t>(frame.channels());
    const auto src = frame.data();
    auto dst = out.data();
    for (int y = 0; y < r.height; ++y) {
        const auto src_off = (static_cast<std::size_t>(r.y + y) * frame.width() + r.x) * ch;
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(src_off), r.width * ch,
                    dst.begin() + static_cast<std::ptrdiff_t>(y * r.width * ch));
    }
    out.timestamp_ms = frame.timestamp_ms;
    out.camera_id = frame.camera_id;
    return out;
}

Frame resize_bilinear(const Frame& frame, int width, int height) {
    Frame out(width, height, frame.channels());
    if (width == frame.width() && height == frame.height()) {
        std::copy(frame.data().begin(), frame.data().end(), out.data().begin());
        return out;
    }
    const double sx = static_cast<double>(frame.width()) / width;
    const double sy = static_cast<double>(frame.height()) / height;
    const int ch = frame.channels();
    for (int y = 0; y < height; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, frame.height() - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, frame.height() - 1);
        const double wy = fy - y0;
        for (int x = 0; x < width; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, frame.width() - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, frame.width() - 1);
            const double wx = fx - x0;
            for (int c = 0; c < ch; ++c) {
                const double top = frame.at(x0, y0, c) * (1 - wx) + frame.at(x1, y0, c) * wx;
                const double bot = frame.at(x0, y1, c) * (1 - wx) + frame.at(x1, y1, c) * wx;
                out.at(x, y, c) =
                    static_cast<std::uint8_t>(std::lround(std::clamp(top * (1 - wy) + bot * wy, 0.0, 255.0)));
            }
        }
    }
    out.timestamp_ms = frame.timestamp_ms;
    out.camera_id = frame.camera_id;
    return out;
}

}  // namespace safegate::imaging
