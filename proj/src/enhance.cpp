#include "dtuna/enhance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dtuna {

const std::array<std::string_view, TunaParams::kCount>& TunaParams::names() {
    static constexpr std::array<std::string_view, kCount> kNames{"a", "b", "c", "d", "e", "gamma", "gamma1"};
    return kNames;
}

TunaParams TunaParams::from_span(std::span<const double> genes) {
    if (genes.size() != kCount) throw InvalidArgument("TunaParams: expected 7 genes");
    return {genes[0], genes[1], genes[2], genes[3], genes[4], genes[5], genes[6]};
}

bool ParamBounds::contains(std::span<const double> genes) const {
    if (genes.size() != intervals.size()) return false;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (!(genes[i] >= intervals[i].low && genes[i] <= intervals[i].high)) return false;
    }
    return true;
}

void ParamBounds::validate() const {
    if (intervals.empty()) throw InvalidArgument("ParamBounds: no intervals");
    for (const auto& iv : intervals) {
        if (!(iv.low < iv.high)) throw InvalidArgument("ParamBounds: every interval needs low < high");
    }
}

ParamBounds ParamBounds::tuna_default() {
    return {{{0.0, 2.0}, {0.0, 2.0}, {0.0, 2.0}, {0.0, 2.0}, {0.0, 2.0}, {0.01, 1.0}, {0.3, 3.0}}};
}

ParamBounds ParamBounds::dichotomy_default() { return {{{0.01, 1.0}}}; }

ChannelF dichotomy(const ChannelF& v, double gamma) {
    if (!(gamma >= 0.0)) throw InvalidArgument("dichotomy: gamma must be >= 0");
    ChannelF out(v.width, v.height);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = v.data[i];
        out.data[i] = std::abs(std::pow(x, gamma) - x);
    }
    return out;
}

Enhanced<ImageF> dichotomy_enhance(const ImageF& img, double gamma) {
    const Hsv hsv = rgb_to_hsv(img);
    auto v = minmax_normalize(dichotomy(hsv.v, gamma));
    Enhanced<ImageF> out{hsv_to_rgb(hsv.h, hsv.s, v.value), {}};
    out.degeneracy.dichotomy = v.degenerate;
    return out;
}

Enhanced<ImageF> dichotomy_filter_enhance(const ImageF& img, double gamma, double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("dichotomy_filter_enhance: sigma must be > 0");
    auto out = dichotomy_enhance(img, gamma);
    out.image = gaussian_blur(out.image, sigma);
    return out;
}

namespace {

// round(255 * x^g) without a pow per sample: level k is reached once
// x >= ((k - 0.5) / 255)^(1 / g).
class PowerQuantizer {
public:
    explicit PowerQuantizer(double g) : identity_(g == 1.0) {
        if (identity_) return;
        edge_[0] = -std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 255; ++k) edge_[k] = std::pow((k - 0.5) / 255.0, 1.0 / g);
        edge_[256] = std::numeric_limits<double>::infinity();
        int level = 0;
        for (int b = 0; b <= kBins; ++b) {
            const double lo = static_cast<double>(b) / kBins;
            while (level < 255 && lo >= edge_[level + 1]) ++level;
            start_[b] = static_cast<std::uint8_t>(level);
        }
    }

    std::uint8_t operator()(double x) const {
        if (std::isnan(x)) throw std::domain_error("quantize: NaN sample");
        const double c = std::clamp(x, 0.0, 1.0);
        if (identity_) return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
        int k = start_[static_cast<int>(c * kBins)];
        while (k < 255 && c >= edge_[k + 1]) ++k;
        return static_cast<std::uint8_t>(k);
    }

private:
    static constexpr int kBins = 4096;
    bool identity_;
    std::array<double, 257> edge_{};
    std::array<std::uint8_t, kBins + 1> start_{};
};

ImageF filtered_rgb(const ImageF& rgb, const TunaSettings& settings) {
    if (settings.filter_space == FilterSpace::Rgb) return guided_filter_self(rgb, settings.guided);
    const YCbCr ycc = rgb_to_ycbcr(rgb);
    const ChannelF y1 = guided_filter(ycc.y, ycc.y, settings.guided);
    return ycbcr_to_rgb(y1, ycc.cb, ycc.cr);
}

}  // namespace

TunaPipeline::TunaPipeline(const ImageU8& img, const TunaSettings& settings)
    : img_(normalize_u8(img)), level_(img.pixel_count()), settings_(settings) {
    settings_.guided.validate();
    std::array<bool, 256> seen{};
    for (std::size_t i = 0; i < level_.size(); ++i) {
        const std::uint8_t* px = img.data.data() + 3 * i;
        level_[i] = std::max({px[0], px[1], px[2]});
        seen[level_[i]] = true;
    }
    for (int l = 0; l < 256; ++l) {
        if (seen[l]) present_.push_back(l);
    }
}

Enhanced<ImageU8> TunaPipeline::operator()(const TunaParams& p) const {
    if (!(p.gamma1 > 0.0)) throw InvalidArgument("tuna_enhance: gamma1 must be > 0");
    Degeneracy flags;
    const int levels = static_cast<int>(present_.size());

    ChannelF v(levels, 1);
    for (int k = 0; k < levels; ++k) v.data[k] = present_[k] / 255.0;
    const auto v_dichotomy = minmax_normalize(dichotomy(v, p.gamma));
    flags.dichotomy = v_dichotomy.degenerate;

    // "inverse of V" is the complement 1 - V.
    ChannelF v_restore(levels, 1);
    for (int k = 0; k < levels; ++k) {
        const double x = v.data[k];
        const double v_inverse = v_dichotomy.value.data[k] * (1.0 - x);
        v_restore.data[k] = p.a * x + p.b * v_inverse;
    }
    const auto v_restored = minmax_normalize(v_restore);
    flags.restored = v_restored.degenerate;

    // Same H and S with a new V scales every channel by V'/V; black stays grey.
    std::array<double, 256> scale{};
    double black = 0.0;
    for (int k = 0; k < levels; ++k) {
        if (present_[k] == 0) {
            black = v_restored.value.data[k];
        } else {
            scale[present_[k]] = v_restored.value.data[k] / v.data[k];
        }
    }
    thread_local ImageF rgb, rgb1;
    rgb.width = img_.width;
    rgb.height = img_.height;
    rgb.data.resize(img_.data.size());
    for (std::size_t i = 0; i < level_.size(); ++i) {
        const std::uint8_t l = level_[i];
        for (int c = 0; c < 3; ++c) rgb.data[3 * i + c] = l == 0 ? black : img_.data[3 * i + c] * scale[l];
    }
    if (settings_.filter_space == FilterSpace::Rgb) {
        guided_filter_self(rgb, settings_.guided, rgb1);
    } else {
        rgb1 = filtered_rgb(rgb, settings_);
    }

    // Blend into rgb1, then min-max and quantize in one pass.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < rgb1.data.size(); ++i) {
        const double x = rgb.data[i];
        const double v = p.e * img_.data[i] + p.c * (1.0 - x) * rgb1.data[i] + p.d * x;
        rgb1.data[i] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    ImageU8 out(img_.width, img_.height);
    flags.blend = !(hi > lo);
    if (!flags.blend) {
        const double span = hi - lo;
        const PowerQuantizer quantize(p.gamma1);
        for (std::size_t i = 0; i < rgb1.data.size(); ++i) out.data[i] = quantize((rgb1.data[i] - lo) / span);
    }
    return {std::move(out), flags};
}

Enhanced<ImageU8> tuna_enhance(const ImageU8& img, const TunaParams& p, const TunaSettings& settings) {
    return TunaPipeline(img, settings)(p);
}

Enhanced<ImageU8> tuna_enhance_ycbcr_variant(const ImageU8& img, const TunaParams& p,
                                             const GuidedFilterConfig& guided) {
    return tuna_enhance(img, p, TunaSettings{guided, FilterSpace::YCbCr});
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Dichotomy: return "dichotomy";
        case Method::DichotomyFilter: return "dichotomy-filter";
        case Method::Tuna: return "tuna";
        case Method::TunaYCbCr: return "tuna-ycbcr";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::Dichotomy, Method::DichotomyFilter, Method::Tuna, Method::TunaYCbCr}) {
        if (method_name(m) == name) return m;
    }
    throw InvalidArgument("unknown method '" + std::string(name) +
                          "' (expected dichotomy, dichotomy-filter, tuna or tuna-ycbcr)");
}

std::size_t gene_count(Method m) {
    return (m == Method::Tuna || m == Method::TunaYCbCr) ? TunaParams::kCount : 1;
}

ParamBounds default_bounds(Method m) {
    return gene_count(m) == 1 ? ParamBounds::dichotomy_default() : ParamBounds::tuna_default();
}

Enhanced<ImageU8> apply_method(Method m, const ImageU8& img, std::span<const double> genes,
                               const PipelineSettings& settings) {
    if (genes.size() != gene_count(m)) {
        throw InvalidArgument("apply_method: " + std::string(method_name(m)) + " expects " +
                              std::to_string(gene_count(m)) + " parameter(s)");
    }
    switch (m) {
        case Method::Dichotomy: {
            auto r = dichotomy_enhance(normalize_u8(img), genes[0]);
            return {denormalize(r.image), r.degeneracy};
        }
        case Method::DichotomyFilter: {
            auto r = dichotomy_filter_enhance(normalize_u8(img), genes[0], settings.gaussian_sigma);
            return {denormalize(r.image), r.degeneracy};
        }
        case Method::Tuna:
            return tuna_enhance(img, TunaParams::from_span(genes), {settings.guided, FilterSpace::Rgb});
        case Method::TunaYCbCr:
            return tuna_enhance(img, TunaParams::from_span(genes), {settings.guided, FilterSpace::YCbCr});
    }
    throw InvalidArgument("apply_method: unknown method");
}

}  // namespace dtuna
