#pragma once

#include <vector>

#include "dtuna/image.hpp"

namespace dtuna {

/// PSNR returned for identical images (MSE = 0).
inline constexpr double kPsnrCap = 100.0;

/// Fitness weights: Q = psnr * kPsnrWeight + ssim * kSsimWeight.
inline constexpr double kPsnrWeight = 1.0 / 100.0;
inline constexpr double kSsimWeight = 1.0;

struct MetricReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double loe = 0.0;
    double fitness = 0.0;
};

/// 10 log10(1 / MSE) on [0,1] samples, capped at kPsnrCap.
double psnr(const ImageF& a, const ImageF& b);

/// Per-pixel mean of the three channels.
ChannelF luminance(const ImageF& img);

/// 11-tap Gaussian window (sigma 1.5) used by SSIM, normalized to sum 1.
const std::vector<double>& ssim_window();

inline constexpr int kSsimWindowSize = 11;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// Mean SSIM over every fully contained 11x11 window (no padding), L = 1.
double ssim(const ChannelF& a, const ChannelF& b);
/// SSIM on the luminance planes.
double ssim(const ImageF& a, const ImageF& b);

/// Lightness-order error: lightness = max(R,G,B), both images point-sampled
/// to at most 100 pixels on the long side, then
///   1000 * #{(x,y) : [L(x) >= L(y)] != [L'(x) >= L'(y)]} / N^2.
double loe(const ImageF& original, const ImageF& enhanced);

/// Max-of-RGB plane.
ChannelF lightness(const ImageF& img);

/// Nearest-sample reduction so that max(width, height) <= max_side.
ChannelF downsample_nearest(const ChannelF& c, int max_side);

double fitness(double psnr_db, double ssim_value);

/// Scores candidate images against a fixed reference. Reference statistics
/// are computed once; results are bit-identical to psnr()/ssim().
class ReferenceScorer {
public:
    explicit ReferenceScorer(const ImageF& reference);

    double psnr(const ImageF& candidate) const;
    double ssim(const ImageF& candidate) const;
    /// fitness(psnr, ssim) of the candidate.
    double fitness(const ImageF& candidate) const;

    const ImageF& reference() const { return reference_; }

private:
    ImageF reference_;
    ChannelF luma_;
    ChannelF mu_;
    ChannelF sq_mean_;
};

/// PSNR/SSIM of enhanced vs reference, LOE of enhanced vs the original input.
MetricReport measure(const ImageF& original, const ImageF& enhanced, const ImageF& reference);

}  // namespace dtuna
