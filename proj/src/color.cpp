#include "dtuna/image.hpp"

#include <algorithm>
#include <cmath>

namespace dtuna {

namespace {

// BT.601 luma weights.
constexpr double kR = 0.299;
constexpr double kG = 0.587;
constexpr double kB = 0.114;
constexpr double kCbScale = 2.0 * (1.0 - kB);  // 1.772
constexpr double kCrScale = 2.0 * (1.0 - kR);  // 1.402

void require_planes(const ChannelF& a, const ChannelF& b, const ChannelF& c) {
    if (a.width != b.width || a.height != b.height || a.width != c.width || a.height != c.height) {
        throw InvalidArgument("color conversion: plane dimensions differ");
    }
}

}  // namespace

Hsv rgb_to_hsv(const ImageF& img) {
    if (img.channels != 3) throw InvalidArgument("rgb_to_hsv: expected a 3-channel image");
    Hsv out{ChannelF(img.width, img.height), ChannelF(img.width, img.height), ChannelF(img.width, img.height)};
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.data[3 * i];
        const double g = img.data[3 * i + 1];
        const double b = img.data[3 * i + 2];
        const double v = std::max({r, g, b});
        const double m = std::min({r, g, b});
        const double delta = v - m;
        double h = 0.0;
        if (delta > 0.0) {
            if (v == r) {
                h = (g - b) / delta;
                if (h < 0.0) h += 6.0;
            } else if (v == g) {
                h = 2.0 + (b - r) / delta;
            } else {
                h = 4.0 + (r - g) / delta;
            }
            h /= 6.0;
            if (h >= 1.0) h -= 1.0;
        }
        out.h.data[i] = h;
        out.s.data[i] = v > 0.0 ? delta / v : 0.0;
        out.v.data[i] = v;
    }
    return out;
}

ImageF hsv_to_rgb(const ChannelF& h, const ChannelF& s, const ChannelF& v) {
    require_planes(h, s, v);
    ImageF out(h.width, h.height, 3);
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double hv = h.data[i] * 6.0;
        const double sv = s.data[i];
        const double vv = v.data[i];
        double sector = std::floor(hv);
        const double f = hv - sector;
        const double p = vv * (1.0 - sv);
        const double q = vv * (1.0 - sv * f);
        const double t = vv * (1.0 - sv * (1.0 - f));
        double r, g, b;
        switch (static_cast<int>(sector) % 6) {
            case 0: r = vv, g = t, b = p; break;
            case 1: r = q, g = vv, b = p; break;
            case 2: r = p, g = vv, b = t; break;
            case 3: r = p, g = q, b = vv; break;
            case 4: r = t, g = p, b = vv; break;
            default: r = vv, g = p, b = q; break;
        }
        out.data[3 * i] = r;
        out.data[3 * i + 1] = g;
        out.data[3 * i + 2] = b;
    }
    return out;
}

YCbCr rgb_to_ycbcr(const ImageF& img) {
    if (img.channels != 3) throw InvalidArgument("rgb_to_ycbcr: expected a 3-channel image");
    YCbCr out{ChannelF(img.width, img.height), ChannelF(img.width, img.height), ChannelF(img.width, img.height)};
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.data[3 * i];
        const double g = img.data[3 * i + 1];
        const double b = img.data[3 * i + 2];
        const double y = kR * r + kG * g + kB * b;
        out.y.data[i] = y;
        out.cb.data[i] = 0.5 + (b - y) / kCbScale;
        out.cr.data[i] = 0.5 + (r - y) / kCrScale;
    }
    return out;
}

ImageF ycbcr_to_rgb(const ChannelF& y, const ChannelF& cb, const ChannelF& cr) {
    require_planes(y, cb, cr);
    ImageF out(y.width, y.height, 3);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double yv = y.data[i];
        const double r = yv + kCrScale * (cr.data[i] - 0.5);
        const double b = yv + kCbScale * (cb.data[i] - 0.5);
        const double g = (yv - kR * r - kB * b) / kG;
        out.data[3 * i] = r;
        out.data[3 * i + 1] = g;
        out.data[3 * i + 2] = b;
    }
    return out;
}

}  // namespace dtuna
