#include "dtuna/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace dtuna {

namespace {

void require_same_shape(const ImageF& a, const ImageF& b, const char* what) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
        throw InvalidArgument(std::string(what) + ": image dimensions differ");
    }
}

// Valid-mode separable filtering: output shrinks by (taps - 1) on each axis.
ChannelF filter_valid(const ChannelF& c, const std::vector<double>& k) {
    const int taps = static_cast<int>(k.size());
    const int ow = c.width - taps + 1;
    const int oh = c.height - taps + 1;
    ChannelF horiz(ow, c.height);
    for (int y = 0; y < c.height; ++y) {
        const double* src = c.data.data() + static_cast<std::size_t>(y) * c.width;
        double* dst = horiz.data.data() + static_cast<std::size_t>(y) * ow;
        for (int j = 0; j < taps; ++j) {
            const double w = k[j];
            const double* s = src + j;
            for (int x = 0; x < ow; ++x) dst[x] += w * s[x];
        }
    }
    ChannelF out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        double* dst = out.data.data() + static_cast<std::size_t>(y) * ow;
        for (int j = 0; j < taps; ++j) {
            const double w = k[j];
            const double* src = horiz.data.data() + static_cast<std::size_t>(y + j) * ow;
            for (int x = 0; x < ow; ++x) dst[x] += w * src[x];
        }
    }
    return out;
}

ChannelF squared(const ChannelF& c) {
    ChannelF out(c.width, c.height);
    for (std::size_t i = 0; i < c.size(); ++i) out.data[i] = c.data[i] * c.data[i];
    return out;
}

struct SsimStats {
    ChannelF mu;
    ChannelF sq_mean;
};

SsimStats ssim_stats(const ChannelF& c) {
    const auto& k = ssim_window();
    return {filter_valid(c, k), filter_valid(squared(c), k)};
}

// Mean SSIM of plane b against plane a whose window statistics are known.
// One horizontal pass produces the rows of E[b], E[b^2] and E[ab] together,
// in the same operation order as filter_valid.
double ssim_against(const ChannelF& a, const ChannelF& mu_a, const ChannelF& sq_a, const double* b) {
    const auto& k = ssim_window();
    const int taps = kSsimWindowSize;
    const int w = a.width;
    const int h = a.height;
    const int ow = w - taps + 1;
    const int oh = h - taps + 1;
    const std::size_t hs = static_cast<std::size_t>(ow) * h;
    thread_local std::vector<double> hb, hbb, hab, rb, rbb, rab;
    hb.assign(hs, 0.0);
    hbb.assign(hs, 0.0);
    hab.assign(hs, 0.0);
    for (int y = 0; y < h; ++y) {
        const double* sb = b + static_cast<std::size_t>(y) * w;
        const double* sa = a.data.data() + static_cast<std::size_t>(y) * w;
        double* d1 = hb.data() + static_cast<std::size_t>(y) * ow;
        double* d2 = hbb.data() + static_cast<std::size_t>(y) * ow;
        double* d3 = hab.data() + static_cast<std::size_t>(y) * ow;
        for (int j = 0; j < taps; ++j) {
            const double wj = k[j];
            const double* pb = sb + j;
            const double* pa = sa + j;
            for (int x = 0; x < ow; ++x) {
                const double v = pb[x];
                d1[x] += wj * v;
                d2[x] += wj * (v * v);
                d3[x] += wj * (pa[x] * v);
            }
        }
    }

    constexpr double range = 1.0;
    constexpr double c1 = (kSsimK1 * range) * (kSsimK1 * range);
    constexpr double c2 = (kSsimK2 * range) * (kSsimK2 * range);
    double total = 0.0;
    for (int y = 0; y < oh; ++y) {
        rb.assign(static_cast<std::size_t>(ow), 0.0);
        rbb.assign(static_cast<std::size_t>(ow), 0.0);
        rab.assign(static_cast<std::size_t>(ow), 0.0);
        for (int j = 0; j < taps; ++j) {
            const double wj = k[j];
            const std::size_t off = static_cast<std::size_t>(y + j) * ow;
            for (int x = 0; x < ow; ++x) {
                rb[x] += wj * hb[off + x];
                rbb[x] += wj * hbb[off + x];
                rab[x] += wj * hab[off + x];
            }
        }
        const double* mua = mu_a.data.data() + static_cast<std::size_t>(y) * ow;
        const double* sqa = sq_a.data.data() + static_cast<std::size_t>(y) * ow;
        for (int x = 0; x < ow; ++x) {
            const double ma = mua[x];
            const double mb = rb[x];
            const double va = sqa[x] - ma * ma;
            const double vb = rbb[x] - mb * mb;
            const double cov = rab[x] - ma * mb;
            const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
            const double den = (ma * ma + mb * mb + c1) * (va + vb + c2);
            total += num / den;
        }
    }
    return total / (static_cast<double>(ow) * oh);
}

void require_ssim_size(int w, int h) {
    if (w < kSsimWindowSize || h < kSsimWindowSize) {
        throw InvalidArgument("ssim: image smaller than the 11x11 window");
    }
}

double mse(const ImageF& a, const ImageF& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.data.size());
}

double psnr_from_mse(double m) {
    if (!(m > 0.0)) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / m));
}

}  // namespace

double psnr(const ImageF& a, const ImageF& b) {
    require_same_shape(a, b, "psnr");
    if (a.data.empty()) throw InvalidArgument("psnr: empty image");
    return psnr_from_mse(mse(a, b));
}

ChannelF luminance(const ImageF& img) {
    if (img.channels == 1) return extract_channel(img, 0);
    ChannelF out(img.width, img.height);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data[i] = (img.data[3 * i] + img.data[3 * i + 1] + img.data[3 * i + 2]) / 3.0;
    }
    return out;
}

const std::vector<double>& ssim_window() {
    static const std::vector<double> window = [] {
        constexpr double sigma = 1.5;
        std::vector<double> w(kSsimWindowSize);
        double sum = 0.0;
        for (int i = 0; i < kSsimWindowSize; ++i) {
            const double x = i - kSsimWindowSize / 2;
            w[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
            sum += w[i];
        }
        for (double& v : w) v /= sum;
        return w;
    }();
    return window;
}

double ssim(const ChannelF& a, const ChannelF& b) {
    if (a.width != b.width || a.height != b.height) throw InvalidArgument("ssim: image dimensions differ");
    require_ssim_size(a.width, a.height);
    const auto sb = ssim_stats(b);
    return ssim_against(b, sb.mu, sb.sq_mean, a.data.data());
}

double ssim(const ImageF& a, const ImageF& b) {
    require_same_shape(a, b, "ssim");
    return ssim(luminance(a), luminance(b));
}

ChannelF lightness(const ImageF& img) {
    ChannelF out(img.width, img.height);
    const int ch = img.channels;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double m = img.data[i * ch];
        for (int c = 1; c < ch; ++c) m = std::max(m, img.data[i * ch + c]);
        out.data[i] = m;
    }
    return out;
}

ChannelF downsample_nearest(const ChannelF& c, int max_side) {
    const int longest = std::max(c.width, c.height);
    if (longest <= max_side) return c;
    const double scale = static_cast<double>(max_side) / longest;
    const int w = std::max(1, static_cast<int>(std::lround(c.width * scale)));
    const int h = std::max(1, static_cast<int>(std::lround(c.height * scale)));
    ChannelF out(w, h);
    for (int y = 0; y < h; ++y) {
        const int sy = std::min(c.height - 1, static_cast<int>((y + 0.5) * c.height / h));
        for (int x = 0; x < w; ++x) {
            const int sx = std::min(c.width - 1, static_cast<int>((x + 0.5) * c.width / w));
            out.at(x, y) = c.at(sx, sy);
        }
    }
    return out;
}

double loe(const ImageF& original, const ImageF& enhanced) {
    require_same_shape(original, enhanced, "loe");
    constexpr int kMaxSide = 100;
    const ChannelF lo = downsample_nearest(lightness(original), kMaxSide);
    const ChannelF le = downsample_nearest(lightness(enhanced), kMaxSide);
    const std::size_t n = lo.size();
    if (n == 0) return 0.0;
    std::uint64_t disagreements = 0;
    for (std::size_t x = 0; x < n; ++x) {
        const double ox = lo.data[x];
        const double ex = le.data[x];
        std::uint64_t row = 0;
        for (std::size_t y = 0; y < n; ++y) {
            row += static_cast<std::uint64_t>((ox >= lo.data[y]) != (ex >= le.data[y]));
        }
        disagreements += row;
    }
    return 1000.0 * static_cast<double>(disagreements) / (static_cast<double>(n) * static_cast<double>(n));
}

double fitness(double psnr_db, double ssim_value) { return kPsnrWeight * psnr_db + kSsimWeight * ssim_value; }

ReferenceScorer::ReferenceScorer(const ImageF& reference) : reference_(reference), luma_(luminance(reference)) {
    require_ssim_size(reference.width, reference.height);
    auto stats = ssim_stats(luma_);
    mu_ = std::move(stats.mu);
    sq_mean_ = std::move(stats.sq_mean);
}

double ReferenceScorer::psnr(const ImageF& candidate) const {
    require_same_shape(candidate, reference_, "ReferenceScorer::psnr");
    return psnr_from_mse(mse(candidate, reference_));
}

double ReferenceScorer::ssim(const ImageF& candidate) const {
    require_same_shape(candidate, reference_, "ReferenceScorer::ssim");
    if (candidate.channels == 1) return ssim_against(luma_, mu_, sq_mean_, candidate.data.data());
    thread_local std::vector<double> luma;
    luma.resize(candidate.pixel_count());
    for (std::size_t i = 0; i < luma.size(); ++i) {
        luma[i] = (candidate.data[3 * i] + candidate.data[3 * i + 1] + candidate.data[3 * i + 2]) / 3.0;
    }
    return ssim_against(luma_, mu_, sq_mean_, luma.data());
}

double ReferenceScorer::fitness(const ImageF& candidate) const {
    return dtuna::fitness(psnr(candidate), ssim(candidate));
}

MetricReport measure(const ImageF& original, const ImageF& enhanced, const ImageF& reference) {
    MetricReport r;
    r.psnr = psnr(enhanced, reference);
    r.ssim = ssim(enhanced, reference);
    r.loe = loe(original, enhanced);
    r.fitness = fitness(r.psnr, r.ssim);
    return r;
}

}  // namespace dtuna
