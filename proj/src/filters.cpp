#include "dtuna/filters.hpp"

#include <algorithm>
#include <cmath>

namespace dtuna {

void GuidedFilterConfig::validate() const {
    if (radius < 1) throw InvalidArgument("GuidedFilterConfig: radius must be >= 1");
    if (!(epsilon > 0.0)) throw InvalidArgument("GuidedFilterConfig: epsilon must be > 0");
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian_kernel: sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k[i + radius] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

namespace {

// 1-D pass along rows (horizontal) or columns (vertical), reflect padded.
ChannelF convolve_axis(const ChannelF& c, const std::vector<double>& k, bool horizontal) {
    const int radius = static_cast<int>(k.size() / 2);
    ChannelF out(c.width, c.height);
    const int len = horizontal ? c.width : c.height;
    std::vector<int> idx(static_cast<std::size_t>(len) + 2 * radius);
    for (int i = -radius; i < len + radius; ++i) idx[i + radius] = reflect_index(i, len);

    if (horizontal) {
        for (int y = 0; y < c.height; ++y) {
            const double* row = c.data.data() + static_cast<std::size_t>(y) * c.width;
            double* dst = out.data.data() + static_cast<std::size_t>(y) * c.width;
            for (int x = 0; x < c.width; ++x) {
                double acc = 0.0;
                for (int j = 0; j < static_cast<int>(k.size()); ++j) acc += k[j] * row[idx[x + j]];
                dst[x] = acc;
            }
        }
    } else {
        for (int y = 0; y < c.height; ++y) {
            double* dst = out.data.data() + static_cast<std::size_t>(y) * c.width;
            for (int j = 0; j < static_cast<int>(k.size()); ++j) {
                const double w = k[j];
                const double* src = c.data.data() + static_cast<std::size_t>(idx[y + j]) * c.width;
                for (int x = 0; x < c.width; ++x) dst[x] += w * src[x];
            }
        }
    }
    return out;
}

}  // namespace

ChannelF gaussian_blur(const ChannelF& c, double sigma) {
    const auto k = gaussian_kernel(sigma);
    return convolve_axis(convolve_axis(c, k, true), k, false);
}

ImageF gaussian_blur(const ImageF& img, double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian_blur: sigma must be > 0");
    ImageF out(img.width, img.height, img.channels);
    for (int ch = 0; ch < img.channels; ++ch) {
        const ChannelF blurred = gaussian_blur(extract_channel(img, ch), sigma);
        for (std::size_t i = 0; i < blurred.size(); ++i) out.data[i * img.channels + ch] = blurred.data[i];
    }
    return out;
}

namespace {

struct BoxScratch {
    std::vector<double> rows;
    std::vector<double> acc;
    std::vector<int> xi;
    std::vector<int> yi;
};

// Separable running sums over the reflect-padded plane; C interleaved channels.
template <int C>
void box_into(const double* src, int w, int h, int r, double* dst, BoxScratch& s) {
    const int side = 2 * r + 1;
    const std::size_t stride = static_cast<std::size_t>(w) * C;
    s.rows.resize(stride * h);
    s.acc.assign(stride, 0.0);
    s.xi.resize(static_cast<std::size_t>(w) + side);
    s.yi.resize(static_cast<std::size_t>(h) + side);
    for (int i = 0; i < w + side; ++i) s.xi[i] = reflect_index(i - r, w) * C;
    for (int i = 0; i < h + side; ++i) s.yi[i] = reflect_index(i - r, h);

    const int inner_begin = std::min(r, w);
    const int inner_end = std::max(inner_begin, w - r - 1);
    for (int y = 0; y < h; ++y) {
        const double* row = src + static_cast<std::size_t>(y) * stride;
        double* out = s.rows.data() + static_cast<std::size_t>(y) * stride;
        double sum[C] = {};
        for (int j = 0; j < side; ++j)
            for (int c = 0; c < C; ++c) sum[c] += row[s.xi[j] + c];
        int x = 0;
        for (; x < inner_begin; ++x) {
            for (int c = 0; c < C; ++c) {
                out[x * C + c] = sum[c];
                sum[c] += row[s.xi[x + side] + c] - row[s.xi[x] + c];
            }
        }
        for (; x < inner_end; ++x) {
            for (int c = 0; c < C; ++c) {
                out[x * C + c] = sum[c];
                sum[c] += row[(x + r + 1) * C + c] - row[(x - r) * C + c];
            }
        }
        for (; x < w; ++x) {
            for (int c = 0; c < C; ++c) {
                out[x * C + c] = sum[c];
                sum[c] += row[s.xi[x + side] + c] - row[s.xi[x] + c];
            }
        }
    }

    const double inv_area = 1.0 / (static_cast<double>(side) * side);
    double* acc = s.acc.data();
    for (int j = 0; j < side; ++j) {
        const double* row = s.rows.data() + static_cast<std::size_t>(s.yi[j]) * stride;
        for (std::size_t x = 0; x < stride; ++x) acc[x] += row[x];
    }
    for (int y = 0; y < h; ++y) {
        double* out = dst + static_cast<std::size_t>(y) * stride;
        const double* add = s.rows.data() + static_cast<std::size_t>(s.yi[y + side]) * stride;
        const double* sub = s.rows.data() + static_cast<std::size_t>(s.yi[y]) * stride;
        for (std::size_t x = 0; x < stride; ++x) {
            out[x] = acc[x] * inv_area;
            acc[x] += add[x] - sub[x];
        }
    }
}

struct GuidedScratch {
    BoxScratch box;
    std::vector<double> mean_i, mean_p, mean_ip, mean_ii, work, b;
};

// Channel-wise guided filter over C interleaved channels.
template <int C>
void guided_into(const double* p, const double* g, bool self_guided, int w, int h, const GuidedFilterConfig& cfg,
                 double* out, GuidedScratch& s) {
    const std::size_t n = static_cast<std::size_t>(w) * h * C;
    const int r = cfg.radius;
    for (auto* v : {&s.mean_i, &s.mean_p, &s.mean_ip, &s.mean_ii, &s.work, &s.b}) v->resize(n);

    box_into<C>(g, w, h, r, s.mean_i.data(), s.box);
    for (std::size_t i = 0; i < n; ++i) s.work[i] = g[i] * p[i];
    box_into<C>(s.work.data(), w, h, r, s.mean_ip.data(), s.box);
    const double* mean_p = s.mean_i.data();
    const double* mean_ii = s.mean_ip.data();
    if (!self_guided) {
        box_into<C>(p, w, h, r, s.mean_p.data(), s.box);
        for (std::size_t i = 0; i < n; ++i) s.work[i] = g[i] * g[i];
        box_into<C>(s.work.data(), w, h, r, s.mean_ii.data(), s.box);
        mean_p = s.mean_p.data();
        mean_ii = s.mean_ii.data();
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double mi = s.mean_i[i];
        const double cov = s.mean_ip[i] - mi * mean_p[i];
        const double var = mean_ii[i] - mi * mi;
        const double a = cov / (var + cfg.epsilon);
        s.work[i] = a;
        s.b[i] = mean_p[i] - a * mi;
    }
    box_into<C>(s.work.data(), w, h, r, s.mean_i.data(), s.box);
    box_into<C>(s.b.data(), w, h, r, s.mean_ip.data(), s.box);
    for (std::size_t i = 0; i < n; ++i) out[i] = s.mean_i[i] * g[i] + s.mean_ip[i];
}

}  // namespace

ChannelF box_mean(const ChannelF& c, int radius) {
    if (radius < 0) throw InvalidArgument("box_mean: radius must be >= 0");
    ChannelF out(c.width, c.height);
    BoxScratch scratch;
    box_into<1>(c.data.data(), c.width, c.height, radius, out.data.data(), scratch);
    return out;
}

ChannelF guided_filter(const ChannelF& p, const ChannelF& guide, const GuidedFilterConfig& cfg) {
    cfg.validate();
    if (p.width != guide.width || p.height != guide.height) {
        throw InvalidArgument("guided_filter: input and guide dimensions differ");
    }
    const bool self_guided = &p == &guide || p.data == guide.data;
    ChannelF out(p.width, p.height);
    thread_local GuidedScratch scratch;
    guided_into<1>(p.data.data(), guide.data.data(), self_guided, p.width, p.height, cfg, out.data.data(), scratch);
    return out;
}

void guided_filter_self(const ImageF& img, const GuidedFilterConfig& cfg, ImageF& out) {
    cfg.validate();
    out.width = img.width;
    out.height = img.height;
    out.channels = img.channels;
    out.data.resize(img.data.size());
    thread_local GuidedScratch scratch;
    if (img.channels == 3) {
        guided_into<3>(img.data.data(), img.data.data(), true, img.width, img.height, cfg, out.data.data(), scratch);
    } else if (img.channels == 1) {
        guided_into<1>(img.data.data(), img.data.data(), true, img.width, img.height, cfg, out.data.data(), scratch);
    } else {
        throw InvalidArgument("guided_filter_self: expected 1 or 3 channels");
    }
}

ImageF guided_filter_self(const ImageF& img, const GuidedFilterConfig& cfg) {
    ImageF out;
    guided_filter_self(img, cfg, out);
    return out;
}

}  // namespace dtuna
