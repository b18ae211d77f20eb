#include "dtuna/harness/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dtuna/evolve.hpp"
#include "dtuna/harness/png_io.hpp"

namespace dtuna {

namespace fs = std::filesystem;

namespace {

std::set<std::string> png_names(const fs::path& dir) {
    std::set<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png") names.insert(entry.path().filename().string());
    }
    return names;
}

}  // namespace

PairedDataset load_paired_dataset(const fs::path& root) {
    const fs::path low_dir = root / "low";
    const fs::path high_dir = root / "high";
    if (!fs::is_directory(low_dir) || !fs::is_directory(high_dir)) {
        throw IoError("dataset '" + root.string() + "' must contain low/ and high/ directories");
    }
    PairedDataset ds;
    ds.name = fs::absolute(root).lexically_normal().filename().string();
    if (ds.name.empty()) ds.name = root.string();

    const auto low = png_names(low_dir);
    const auto high = png_names(high_dir);
    for (const auto& n : low) {
        if (!high.contains(n)) throw IoError("orphan low-light image without reference: " + (low_dir / n).string());
    }
    for (const auto& n : high) {
        if (!low.contains(n)) throw IoError("orphan reference image without low-light input: " + (high_dir / n).string());
    }
    if (low.empty()) {
        ds.warnings.push_back("dataset '" + root.string() + "' contains no PNG pairs");
        return ds;
    }
    for (const auto& n : low) {
        ImagePair p{n, low_dir / n, high_dir / n};
        const auto [lw, lh] = read_png_size(p.low);
        const auto [hw, hh] = read_png_size(p.reference);
        if (lw != hw || lh != hh) {
            throw IoError("dimension mismatch in pair '" + n + "': " + std::to_string(lw) + "x" + std::to_string(lh) +
                          " vs " + std::to_string(hw) + "x" + std::to_string(hh));
        }
        p.width = lw;
        p.height = lh;
        ds.pairs.push_back(std::move(p));
    }
    return ds;
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ImageU8 synth_darken(const ImageU8& reference, double gamma_dark, std::uint64_t seed, double noise_sigma) {
    if (!(gamma_dark >= 1.0)) throw InvalidArgument("synth_darken: gamma_dark must be >= 1");
    if (!(noise_sigma >= 0.0)) throw InvalidArgument("synth_darken: noise sigma must be >= 0");
    ImageF dark = gamma_correct(normalize_u8(reference), gamma_dark);
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (double& x : dark.data) x += noise_sigma * rng.normal();
    }
    return denormalize(dark);
}

ImageU8 synthetic_scene(int width, int height, std::uint64_t seed) {
    if (width < 1 || height < 1) throw InvalidArgument("synthetic_scene: dimensions must be positive");
    Rng rng(seed);
    ImageF img(width, height, 3);
    const double horizon = 0.45 * height;

    auto put = [&](int x, int y, double r, double g, double b) {
        img.at(x, y, 0) = r;
        img.at(x, y, 1) = g;
        img.at(x, y, 2) = b;
    };

    // Sky and ground.
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (y < horizon) {
                const double t = y / horizon;
                put(x, y, 0.50 + 0.28 * t, 0.62 + 0.18 * t, 0.86 - 0.02 * t);
            } else {
                const double t = (y - horizon) / (height - horizon);
                const double ripple = 0.04 * std::sin(0.15 * x + 0.6 * std::sin(0.05 * y)) * std::cos(0.11 * y);
                put(x, y, 0.42 + 0.18 * t + ripple, 0.40 + 0.12 * t + ripple, 0.26 + 0.08 * t + ripple);
            }
        }
    }

    // Buildings with window grids standing on the horizon.
    const int buildings = 5;
    for (int i = 0; i < buildings; ++i) {
        const int bw = static_cast<int>(width * (0.08 + 0.06 * rng.uniform()));
        const int bx = static_cast<int>((width - bw) * (i + rng.uniform()) / buildings);
        const int bh = static_cast<int>(horizon * (0.35 + 0.5 * rng.uniform()));
        const int top = static_cast<int>(horizon) - bh;
        const double base = 0.30 + 0.35 * rng.uniform();
        const double tint = 0.08 * (rng.uniform() - 0.5);
        for (int y = std::max(0, top); y < static_cast<int>(horizon) + 4 && y < height; ++y) {
            for (int x = bx; x < std::min(width, bx + bw); ++x) {
                const double shade = base * (0.85 + 0.15 * (x - bx) / std::max(1, bw));
                const bool window = ((x - bx) % 12 > 3) && ((x - bx) % 12 < 9) && ((y - top) % 16 > 4) && ((y - top) % 16 < 11);
                if (window) {
                    put(x, y, 0.85, 0.80, 0.55);
                } else {
                    put(x, y, shade + tint, shade, shade - tint);
                }
            }
        }
    }

    // Shaded spheres in the foreground.
    for (int i = 0; i < 4; ++i) {
        const double cx = width * (0.1 + 0.8 * rng.uniform());
        const double cy = horizon + (height - horizon) * (0.3 + 0.5 * rng.uniform());
        const double rad = std::min(width, height) * (0.06 + 0.06 * rng.uniform());
        const double col[3] = {0.3 + 0.6 * rng.uniform(), 0.3 + 0.6 * rng.uniform(), 0.3 + 0.6 * rng.uniform()};
        for (int y = std::max(0, static_cast<int>(cy - rad)); y < std::min(height, static_cast<int>(cy + rad) + 1); ++y) {
            for (int x = std::max(0, static_cast<int>(cx - rad)); x < std::min(width, static_cast<int>(cx + rad) + 1); ++x) {
                const double dx = (x - cx) / rad;
                const double dy = (y - cy) / rad;
                const double d2 = dx * dx + dy * dy;
                if (d2 > 1.0) continue;
                const double light = 0.35 + 0.65 * std::max(0.0, -0.5 * dx - 0.6 * dy + 0.62 * std::sqrt(1.0 - d2));
                put(x, y, col[0] * light, col[1] * light, col[2] * light);
            }
        }
    }

    // Striped awning across the lower third.
    const int stripe_top = static_cast<int>(horizon + 0.1 * (height - horizon));
    const int stripe_h = std::max(1, height / 20);
    for (int y = stripe_top; y < std::min(height, stripe_top + stripe_h); ++y) {
        for (int x = width / 3; x < 2 * width / 3; ++x) {
            const bool band = (x / 6) % 2 == 0;
            if (band) put(x, y, 0.82, 0.30, 0.28);
            else put(x, y, 0.92, 0.90, 0.85);
        }
    }

    for (double& v : img.data) v = std::clamp(v + 0.01 * rng.normal(), 0.0, 1.0);
    return denormalize(img);
}

}  // namespace dtuna
