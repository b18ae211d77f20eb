#pragma once

#include <cstdint>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtuna/filters.hpp"
#include "dtuna/image.hpp"

namespace dtuna {

/// The seven tunable weights of the tuned dichotomy pipeline.
struct TunaParams {
    double a = 1.0;       ///< weight of the original V plane
    double b = 0.0;       ///< weight of the complement-weighted dichotomy plane
    double c = 0.0;       ///< weight of the (1 - rgb) * filtered term
    double d = 0.0;       ///< weight of the restored rgb term
    double e = 1.0;       ///< weight of the normalized input
    double gamma = 0.5;   ///< dichotomy exponent
    double gamma1 = 1.0;  ///< final correction exponent

    static constexpr std::size_t kCount = 7;
    static const std::array<std::string_view, kCount>& names();

    std::array<double, kCount> to_array() const { return {a, b, c, d, e, gamma, gamma1}; }
    static TunaParams from_span(std::span<const double> genes);

    friend bool operator==(const TunaParams&, const TunaParams&) = default;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Per-gene search interval. Ordering matches the gene vector of the method.
struct ParamBounds {
    std::vector<Interval> intervals;

    std::size_t size() const { return intervals.size(); }
    const Interval& operator[](std::size_t i) const { return intervals[i]; }
    Interval& operator[](std::size_t i) { return intervals[i]; }
    bool contains(std::span<const double> genes) const;
    void validate() const;

    /// a..e in [0,2], gamma in [0.01,1], gamma1 in [0.3,3].
    static ParamBounds tuna_default();
    /// Single gene: gamma in [0.01,1].
    static ParamBounds dichotomy_default();
};

/// Which stage of the pipeline hit a constant plane in min-max normalization.
struct Degeneracy {
    bool dichotomy = false;  ///< |V^gamma - V| was flat
    bool restored = false;   ///< a*V + b*v_inv was flat
    bool blend = false;      ///< rgb2 was flat

    bool any() const { return dichotomy || restored || blend; }
};

template <class T>
struct Enhanced {
    T image;
    Degeneracy degeneracy;
};

/// Raw contrast map |v^gamma - v|; normalization is left to the caller.
ChannelF dichotomy(const ChannelF& v, double gamma);

/// Replaces V with minmax(dichotomy(V, gamma)), keeping H and S.
Enhanced<ImageF> dichotomy_enhance(const ImageF& img, double gamma);

/// dichotomy_enhance followed by a per-channel Gaussian blur.
Enhanced<ImageF> dichotomy_filter_enhance(const ImageF& img, double gamma, double sigma = 1.0);

enum class FilterSpace { Rgb, YCbCr };

struct TunaSettings {
    GuidedFilterConfig guided;
    FilterSpace filter_space = FilterSpace::Rgb;
};

/// Full tuned pipeline:
///   img  = u8 / 255
///   H,S,V = hsv(img)
///   v_d  = minmax(|V^gamma - V|)
///   v_rc = minmax(a*V + b * v_d * (1 - V))
///   rgb  = rgb(H, S, v_rc)
///   rgb1 = guided(rgb, rgb)                  (or guided Y plane only, in YCbCr mode)
///   rgb2 = minmax(e*img + c*(1 - rgb)*rgb1 + d*rgb)   jointly over channels
///   out  = round(255 * rgb2^gamma1)
/// Flat intermediate planes become zeros and are reported in `degeneracy`.
Enhanced<ImageU8> tuna_enhance(const ImageU8& img, const TunaParams& p, const TunaSettings& settings = {});

/// tuna_enhance bound to one input. Parameter-independent work (normalization,
/// the V plane) is done once, and since V only takes 256 values the dichotomy
/// and restoration stages run on a per-level table.
class TunaPipeline {
public:
    explicit TunaPipeline(const ImageU8& img, const TunaSettings& settings = {});

    Enhanced<ImageU8> operator()(const TunaParams& p) const;

private:
    ImageF img_;
    std::vector<std::uint8_t> level_;  ///< max channel byte per pixel
    std::vector<int> present_;         ///< distinct levels, ascending
    TunaSettings settings_;
};

Enhanced<ImageU8> tuna_enhance_ycbcr_variant(const ImageU8& img, const TunaParams& p,
                                             const GuidedFilterConfig& guided = {});

/// Enhancement variants selectable by the optimizer and the CLI.
enum class Method { Dichotomy, DichotomyFilter, Tuna, TunaYCbCr };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

/// Number of genes the optimizer tunes for `m` (1 for the plain variants, 7 for tuna).
std::size_t gene_count(Method m);
ParamBounds default_bounds(Method m);

struct PipelineSettings {
    GuidedFilterConfig guided;
    double gaussian_sigma = 1.0;
};

/// Runs `m` with a gene vector and quantizes to 8 bits.
Enhanced<ImageU8> apply_method(Method m, const ImageU8& img, std::span<const double> genes,
                               const PipelineSettings& settings = {});

}  // namespace dtuna
