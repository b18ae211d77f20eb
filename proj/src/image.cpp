#include "dtuna/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dtuna {

namespace {

void require_same_shape(const ChannelF& a, const ChannelF& b, const char* what) {
    if (a.width != b.width || a.height != b.height) {
        throw InvalidArgument(std::string(what) + ": channel dimensions differ");
    }
}

void require_rgb(const ImageF& img, const char* what) {
    if (img.channels != 3) {
        throw InvalidArgument(std::string(what) + ": expected a 3-channel image");
    }
}

}  // namespace

ImageU8::ImageU8(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("ImageU8: dimensions must be positive");
    data.assign(static_cast<std::size_t>(w) * h * 3, 0);
}

ImageU8::ImageU8(int w, int h, std::vector<std::uint8_t> samples) : width(w), height(h), data(std::move(samples)) {
    validate();
}

void ImageU8::validate() const {
    if (width < 1 || height < 1) throw InvalidArgument("ImageU8: dimensions must be positive");
    if (data.size() != pixel_count() * 3) throw InvalidArgument("ImageU8: data length must equal width*height*3");
}

ChannelF::ChannelF(int w, int h, double fill) : width(w), height(h) {
    if (w < 0 || h < 0) throw InvalidArgument("ChannelF: negative dimensions");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

ImageF::ImageF(int w, int h, int c, double fill) : width(w), height(h), channels(c) {
    if (w < 0 || h < 0) throw InvalidArgument("ImageF: negative dimensions");
    if (c != 1 && c != 3) throw InvalidArgument("ImageF: channels must be 1 or 3");
    data.assign(static_cast<std::size_t>(w) * h * c, fill);
}

ImageF normalize_u8(const ImageU8& img) {
    img.validate();
    ImageF out(img.width, img.height, 3);
    std::transform(img.data.begin(), img.data.end(), out.data.begin(),
                   [](std::uint8_t v) { return static_cast<double>(v) / 255.0; });
    return out;
}

ImageU8 denormalize(const ImageF& img) {
    require_rgb(img, "denormalize");
    ImageU8 out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const double x = img.data[i];
        if (std::isnan(x)) throw std::domain_error("denormalize: NaN sample (upstream pipeline fault)");
        const double scaled = std::clamp(x, 0.0, 1.0) * 255.0;
        out.data[i] = static_cast<std::uint8_t>(std::floor(scaled + 0.5));
    }
    return out;
}

ChannelF extract_channel(const ImageF& img, int c) {
    if (c < 0 || c >= img.channels) throw InvalidArgument("extract_channel: channel index out of range");
    ChannelF out(img.width, img.height);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) out.data[i] = img.data[i * img.channels + c];
    return out;
}

Rgb split_rgb(const ImageF& img) {
    require_rgb(img, "split_rgb");
    return {extract_channel(img, 0), extract_channel(img, 1), extract_channel(img, 2)};
}

ImageF merge_rgb(const ChannelF& r, const ChannelF& g, const ChannelF& b) {
    require_same_shape(r, g, "merge_rgb");
    require_same_shape(r, b, "merge_rgb");
    ImageF out(r.width, r.height, 3);
    for (std::size_t i = 0; i < r.size(); ++i) {
        out.data[3 * i] = r.data[i];
        out.data[3 * i + 1] = g.data[i];
        out.data[3 * i + 2] = b.data[i];
    }
    return out;
}

Normalized<ChannelF> minmax_normalize(const ChannelF& c) {
    Normalized<ChannelF> out{ChannelF(c.width, c.height), false};
    if (c.data.empty()) {
        out.degenerate = true;
        return out;
    }
    const auto [lo_it, hi_it] = std::minmax_element(c.data.begin(), c.data.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        out.degenerate = true;
        return out;
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < c.size(); ++i) out.value.data[i] = (c.data[i] - lo) / span;
    return out;
}

Normalized<ImageF> minmax_normalize(const ImageF& img) {
    Normalized<ImageF> out{ImageF(img.width, img.height, img.channels), false};
    if (img.data.empty()) {
        out.degenerate = true;
        return out;
    }
    const auto [lo_it, hi_it] = std::minmax_element(img.data.begin(), img.data.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        out.degenerate = true;
        return out;
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < img.data.size(); ++i) out.value.data[i] = (img.data[i] - lo) / span;
    return out;
}

ChannelF gamma_correct(const ChannelF& c, double gamma) {
    if (!(gamma > 0.0)) throw InvalidArgument("gamma_correct: gamma must be positive");
    ChannelF out(c.width, c.height);
    std::transform(c.data.begin(), c.data.end(), out.data.begin(), [gamma](double x) { return std::pow(x, gamma); });
    return out;
}

ImageF gamma_correct(const ImageF& img, double gamma) {
    if (!(gamma > 0.0)) throw InvalidArgument("gamma_correct: gamma must be positive");
    ImageF out(img.width, img.height, img.channels);
    if (gamma == 1.0) {
        out.data = img.data;
        return out;
    }
    std::transform(img.data.begin(), img.data.end(), out.data.begin(), [gamma](double x) { return std::pow(x, gamma); });
    return out;
}

}  // namespace dtuna
