#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dtuna {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// 8-bit interleaved RGB image, row-major.
struct ImageU8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    ImageU8() = default;
    ImageU8(int w, int h);
    ImageU8(int w, int h, std::vector<std::uint8_t> samples);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    std::uint8_t& at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    std::uint8_t at(int x, int y, int c) const { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

    /// Throws InvalidArgument unless dimensions are positive and data holds width*height*3 bytes.
    void validate() const;

    friend bool operator==(const ImageU8&, const ImageU8&) = default;
};

/// Single floating-point plane.
struct ChannelF {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    ChannelF() = default;
    ChannelF(int w, int h, double fill = 0.0);

    std::size_t size() const { return data.size(); }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const ChannelF&, const ChannelF&) = default;
};

/// Interleaved floating-point image with 1 or 3 channels. Pipeline values live in [0,1].
struct ImageF {
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<double> data;

    ImageF() = default;
    ImageF(int w, int h, int c = 3, double fill = 0.0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    double& at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * channels + c]; }
    double at(int x, int y, int c) const { return data[(static_cast<std::size_t>(y) * width + x) * channels + c]; }

    friend bool operator==(const ImageF&, const ImageF&) = default;
};

struct Rgb {
    ChannelF r, g, b;
};

struct Hsv {
    ChannelF h, s, v;
};

struct YCbCr {
    ChannelF y, cb, cr;
};

/// Result of a min-max rescale. `degenerate` is set when the input was constant
/// (or empty); the samples are then all zero.
template <class T>
struct Normalized {
    T value;
    bool degenerate = false;
};

ImageF normalize_u8(const ImageU8& img);

/// clamp(x, 0, 1) * 255, rounded half-up. NaN samples throw std::domain_error.
ImageU8 denormalize(const ImageF& img);

ChannelF extract_channel(const ImageF& img, int c);
Rgb split_rgb(const ImageF& img);
ImageF merge_rgb(const ChannelF& r, const ChannelF& g, const ChannelF& b);

/// Hue is stored in [0,1) rather than degrees.
Hsv rgb_to_hsv(const ImageF& img);
ImageF hsv_to_rgb(const ChannelF& h, const ChannelF& s, const ChannelF& v);

/// Full-range BT.601; chroma is offset so neutral grey sits at 0.5.
YCbCr rgb_to_ycbcr(const ImageF& img);
ImageF ycbcr_to_rgb(const ChannelF& y, const ChannelF& cb, const ChannelF& cr);

Normalized<ChannelF> minmax_normalize(const ChannelF& c);
/// Joint rescale: one min and one max over every sample of every channel.
Normalized<ImageF> minmax_normalize(const ImageF& img);

ChannelF gamma_correct(const ChannelF& c, double gamma);
ImageF gamma_correct(const ImageF& img, double gamma);

}  // namespace dtuna
