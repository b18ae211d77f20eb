#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dtuna/image.hpp"

namespace dtuna {

struct ImagePair {
    std::string name;  ///< shared file name, e.g. "1.png"
    std::filesystem::path low;
    std::filesystem::path reference;
    int width = 0;
    int height = 0;
};

struct PairedDataset {
    std::string name;
    std::vector<ImagePair> pairs;  ///< sorted by file name
    std::vector<std::string> warnings;
};

/// Reads `root/low/*.png` and `root/high/*.png` matched by file name.
/// Throws IoError for an orphan on either side, an unreadable header or a
/// size mismatch within a pair. Empty directories yield an empty dataset with
/// a warning.
PairedDataset load_paired_dataset(const std::filesystem::path& root);

/// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text);

/// Darkens a reference with a power law: u8 -> x^gamma_dark -> u8, with
/// optional additive Gaussian noise of standard deviation `noise_sigma` on the
/// [0,1] scale.
ImageU8 synth_darken(const ImageU8& reference, double gamma_dark, std::uint64_t seed = 0, double noise_sigma = 0.0);

/// Procedural mid-key test scene: sky gradient, ground plane, shaded objects,
/// striped texture and fine grain. Deterministic for a given seed.
ImageU8 synthetic_scene(int width, int height, std::uint64_t seed = 1);

}  // namespace dtuna
