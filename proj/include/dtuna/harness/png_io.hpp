#pragma once

#include <filesystem>
#include <stdexcept>

#include "dtuna/image.hpp"

namespace dtuna {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decodes any PNG to 8-bit RGB; alpha is dropped, grey is expanded.
ImageU8 read_png(const std::filesystem::path& path);

/// Width and height from the header without decoding pixels.
std::pair<int, int> read_png_size(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ImageU8& img);

}  // namespace dtuna
