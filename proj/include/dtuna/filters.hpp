#pragma once

#include <vector>

#include "dtuna/image.hpp"

namespace dtuna {

struct GuidedFilterConfig {
    int radius = 8;         ///< window half-width in pixels
    double epsilon = 0.01;  ///< regularization on [0,1]-scaled intensities

    void validate() const;
};

/// Maps any integer index onto [0, n) by half-sample symmetric reflection
/// (... c b a | a b c ... | z y x ...). Folds repeatedly when the index lies
/// more than one period outside.
int reflect_index(int i, int n);

/// Sampled Gaussian truncated at +-ceil(3 sigma), normalized to sum 1.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur with reflect padding.
ChannelF gaussian_blur(const ChannelF& c, double sigma);
ImageF gaussian_blur(const ImageF& img, double sigma);

/// Mean over the (2r+1)^2 window centered on each pixel, reflect-padded,
/// evaluated with separable running sums.
ChannelF box_mean(const ChannelF& c, int radius);

/// Single-channel guided filter (He et al.): q = mean(a) * I + mean(b) with
/// a = cov(I,p) / (var(I) + eps), b = mean(p) - a * mean(I).
ChannelF guided_filter(const ChannelF& p, const ChannelF& guide, const GuidedFilterConfig& cfg = {});

/// Each RGB channel filtered with itself as the guide.
ImageF guided_filter_self(const ImageF& img, const GuidedFilterConfig& cfg = {});
/// As above, writing into `out` (resized as needed) to reuse its storage.
void guided_filter_self(const ImageF& img, const GuidedFilterConfig& cfg, ImageF& out);

}  // namespace dtuna
