#include "dtuna/harness/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>

namespace dtuna {

namespace {

struct PngImage {
    png_image image;

    PngImage() {
        std::memset(&image, 0, sizeof(image));
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;

    std::string message() const { return image.message; }
};

void begin_read(PngImage& png, const std::filesystem::path& path) {
    if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
        throw IoError("cannot read PNG '" + path.string() + "': " + png.message());
    }
}

}  // namespace

ImageU8 read_png(const std::filesystem::path& path) {
    PngImage png;
    begin_read(png, path);
    const bool has_alpha = (png.image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    png.image.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    const int w = static_cast<int>(png.image.width);
    const int h = static_cast<int>(png.image.height);
    if (w < 1 || h < 1) throw IoError("PNG '" + path.string() + "' has empty dimensions");
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
    if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr)) {
        throw IoError("cannot decode PNG '" + path.string() + "': " + png.message());
    }
    if (!has_alpha) return ImageU8(w, h, std::move(buffer));
    ImageU8 out(w, h);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        std::memcpy(&out.data[3 * i], &buffer[4 * i], 3);
    }
    return out;
}

std::pair<int, int> read_png_size(const std::filesystem::path& path) {
    PngImage png;
    begin_read(png, path);
    return {static_cast<int>(png.image.width), static_cast<int>(png.image.height)};
}

void write_png(const std::filesystem::path& path, const ImageU8& img) {
    img.validate();
    PngImage png;
    png.image.width = static_cast<png_uint_32>(img.width);
    png.image.height = static_cast<png_uint_32>(img.height);
    png.image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png.image, path.c_str(), 0, img.data.data(), 0, nullptr)) {
        throw IoError("cannot write PNG '" + path.string() + "': " + png.message());
    }
}

}  // namespace dtuna
