#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "safegate/imaging/frame.hpp"

namespace safegate::imaging {

// 8-bit gray and RGB PNG only; palette/alpha/16-bit inputs are converted on read.

[[nodiscard]] Frame decode_png(std::span<const std::uint8_t> bytes);
[[nodiscard]] std::vector<std::uint8_t> encode_png(const Frame& frame);

[[nodiscard]] Frame read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Frame& frame);

}  // namespace safegate::imaging
