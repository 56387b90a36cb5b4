#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace safegate::imaging {

/// Axis-aligned pixel rectangle, top-left origin.
struct Rect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    [[nodiscard]] long long area() const { return static_cast<long long>(width) * height; }
    [[nodiscard]] bool empty() const { return width <= 0 || height <= 0; }
    [[nodiscard]] bool contains(int px, int py) const {
        return px >= x && py >= y && px < x + width && py < y + height;
    }
    [[nodiscard]] bool contains(const Rect& other) const {
        return other.x >= x && other.y >= y && other.x + other.width <= x + width &&
               other.y + other.height <= y + height;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// 8-bit raster, row-major, interleaved channels (1 = intensity, 3 = RGB).
///
/// Binary frames are single-channel frames whose samples are all 0 or 255.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, int channels, std::uint8_t fill = 0);
    Frame(int width, int height, int channels, std::vector<std::uint8_t> data);

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }
    [[nodiscard]] int channels() const { return channels_; }
    [[nodiscard]] std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] bool empty() const { return data_.empty(); }
    [[nodiscard]] bool is_gray() const { return channels_ == 1; }

    [[nodiscard]] std::span<const std::uint8_t> data() const { return data_; }
    [[nodiscard]] std::span<std::uint8_t> data() { return data_; }
    [[nodiscard]] const std::vector<std::uint8_t>& bytes() const { return data_; }

    [[nodiscard]] std::uint8_t at(int x, int y, int c = 0) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    [[nodiscard]] Rect bounds() const { return {0, 0, width_, height_}; }

    std::int64_t timestamp_ms = 0;
    std::string camera_id;

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.channels_ == b.channels_ &&
               a.data_ == b.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Throws InvalidParameter unless the frame has exactly one channel.
void require_gray(const Frame& frame, const char* what);
/// Throws InvalidParameter unless the frame has exactly three channels.
void require_rgb(const Frame& frame, const char* what);
/// Throws DimensionMismatch unless both frames share width and height.
void require_same_size(const Frame& a, const Frame& b, const char* what);

/// Copy of the region `roi` (clipped to the frame bounds).
[[nodiscard]] Frame crop(const Frame& frame, Rect roi);
/// Bilinear resampling to an exact output size.
[[nodiscard]] Frame resize_bilinear(const Frame& frame, int width, int height);
/// Intersection of `roi` with the frame rectangle.
[[nodiscard]] Rect clip_to(const Rect& roi, const Rect& bounds);

}  // namespace safegate::imaging
