#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "dtuna/image.hpp"

namespace test {

inline dtuna::ImageF random_image(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    dtuna::ImageF img(w, h, 3);
    for (double& x : img.data) x = dist(gen);
    return img;
}

inline dtuna::ChannelF random_plane(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    dtuna::ChannelF c(w, h);
    for (double& x : c.data) x = dist(gen);
    return c;
}

inline dtuna::ImageU8 random_u8(int w, int h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    dtuna::ImageU8 img(w, h);
    for (auto& x : img.data) x = static_cast<std::uint8_t>(dist(gen));
    return img;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const dtuna::ImageF& a, const dtuna::ImageF& b) { return max_abs_diff(a.data, b.data); }
inline double max_abs_diff(const dtuna::ChannelF& a, const dtuna::ChannelF& b) { return max_abs_diff(a.data, b.data); }

inline int max_level_diff(const dtuna::ImageU8& a, const dtuna::ImageU8& b) {
    int m = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(int(a.data[i]) - int(b.data[i])));
    return m;
}

// Half-sample symmetric reflection written out longhand, independent of the
// library's reflect_index.
inline int reflect_naive(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

// O(r^2) box mean with reflect padding.
inline dtuna::ChannelF naive_box_mean(const dtuna::ChannelF& c, int r) {
    dtuna::ChannelF out(c.width, c.height);
    for (int y = 0; y < c.height; ++y) {
        for (int x = 0; x < c.width; ++x) {
            double s = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) s += c.at(reflect_naive(x + dx, c.width), reflect_naive(y + dy, c.height));
            }
            out.at(x, y) = s / ((2.0 * r + 1) * (2.0 * r + 1));
        }
    }
    return out;
}

// Guided filter evaluated directly from window sums.
inline dtuna::ChannelF naive_guided(const dtuna::ChannelF& p, const dtuna::ChannelF& g, int r, double eps) {
    using dtuna::ChannelF;
    ChannelF gp(p.width, p.height), gg(p.width, p.height);
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        gp.data[i] = g.data[i] * p.data[i];
        gg.data[i] = g.data[i] * g.data[i];
    }
    const ChannelF mi = naive_box_mean(g, r), mp = naive_box_mean(p, r), mip = naive_box_mean(gp, r),
                   mii = naive_box_mean(gg, r);
    ChannelF a(p.width, p.height), b(p.width, p.height);
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        a.data[i] = (mip.data[i] - mi.data[i] * mp.data[i]) / (mii.data[i] - mi.data[i] * mi.data[i] + eps);
        b.data[i] = mp.data[i] - a.data[i] * mi.data[i];
    }
    const ChannelF ma = naive_box_mean(a, r), mb = naive_box_mean(b, r);
    ChannelF out(p.width, p.height);
    for (std::size_t i = 0; i < p.data.size(); ++i) out.data[i] = ma.data[i] * g.data[i] + mb.data[i];
    return out;
}

// Per-window SSIM straight from the definition: 2-D Gaussian weights built
// from exp(-(x^2+y^2)/(2*1.5^2)), centered moments, no separable tricks.
inline double naive_ssim(const dtuna::ChannelF& a, const dtuna::ChannelF& b) {
    constexpr int n = 11;
    constexpr double sigma = 1.5;
    double w[n][n];
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double dx = i - 5, dy = j - 5;
            w[i][j] = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
            total += w[i][j];
        }
    }
    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double acc = 0.0;
    int windows = 0;
    for (int y = 0; y + n <= a.height; ++y) {
        for (int x = 0; x + n <= a.width; ++x) {
            double ma = 0, mb = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    ma += w[i][j] / total * a.at(x + i, y + j);
                    mb += w[i][j] / total * b.at(x + i, y + j);
                }
            double va = 0, vb = 0, cov = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const double da = a.at(x + i, y + j) - ma, db = b.at(x + i, y + j) - mb;
                    va += w[i][j] / total * da * da;
                    vb += w[i][j] / total * db * db;
                    cov += w[i][j] / total * da * db;
                }
            acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    return acc / windows;
}

// Brute-force lightness-order error over two equally sized lightness planes.
inline double naive_loe(const std::vector<double>& lo, const std::vector<double>& le) {
    const std::size_t n = lo.size();
    double bad = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bad += ((lo[i] >= lo[j]) != (le[i] >= le[j])) ? 1 : 0;
    return 1000.0 * bad / (double(n) * double(n));
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               (tag + "_" + std::to_string(std::random_device{}()) + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace test
