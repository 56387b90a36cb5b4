#include "safegate/imaging/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "safegate/error.hpp"

namespace safegate::imaging {

Frame decode_png(std::span<const std::uint8_t> bytes) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
        throw IoError(std::string("decode_png: ") + image.message);
    }
    const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (image.width == 0 || image.height == 0) {
        png_image_free(&image);
        throw IoError("decode_png: empty image");
    }
    Frame frame(static_cast<int>(image.width), static_cast<int>(image.height), gray ? 1 : 3);
    if (png_image_finish_read(&image, nullptr, frame.data().data(), 0, nullptr) == 0) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("decode_png: " + msg);
    }
    return frame;
}

std::vector<std::uint8_t> encode_png(const Frame& frame) {
    if (frame.empty()) throw InvalidParameter("encode_png: empty frame");
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frame.width());
    image.height = static_cast<png_uint_32>(frame.height());
    image.format = frame.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (png_image_write_to_memory(&image, nullptr, &size, 0, frame.data().data(), 0, nullptr) == 0) {
        throw IoError(std::string("encode_png: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (png_image_write_to_memory(&image, out.data(), &size, 0, frame.data().data(), 0, nullptr) == 0) {
        throw IoError(std::string("encode_png: ") + image.message);
    }
    out.resize(size);
    return out;
}

Frame read_png(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_png: cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    try {
        return decode_png(bytes);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_png(const std::filesystem::path& path, const Frame& frame) {
    const auto bytes = encode_png(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_png: cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write_png: write failed for " + path.string());
}

}  // namespace safegate::imaging
