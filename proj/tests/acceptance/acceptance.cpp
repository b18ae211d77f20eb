// Acceptance gate: one line per criterion, PASS / FAIL / SKIP.
//
//   acceptance [--photo PNG] [--only N]
//
// DTUNA_LOL_DIR points at a LOLv1 eval15 directory (low/ + high/) to enable
// criterion 5; DTUNA_LOL_FULL=1 selects the full budget instead of the smoke run.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "dtuna/evolve.hpp"
#include "dtuna/harness/benchmark.hpp"
#include "dtuna/harness/png_io.hpp"
#include "dtuna/quality.hpp"
#include "test_support.hpp"

using namespace dtuna;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 for none
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double ulp(double x) {
    x = std::abs(x);
    return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

Outcome operator_algebra() {
    Rng rng(2024);
    std::size_t identity_misses = 0, mutation_misses = 0;
    double worst_ulps = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double p1 = rng.uniform() * 4 - 2, p2 = rng.uniform() * 4 - 2;
        const double u = rng.uniform();
        const double eta = 0.5 + rng.uniform() * 30;

        const auto [c1, c2] = sbx_crossover(p1, p2, u, eta);
        const double scale = std::max({ulp(p1), ulp(p2), ulp(c1), ulp(c2)});
        worst_ulps = std::max(worst_ulps, std::abs((c1 + c2) - (p1 + p2)) / scale);

        const auto [i1, i2] = sbx_crossover(p1, p2, 0.5, eta);
        if (i1 != p1 || i2 != p2) ++identity_misses;

        const double lo = std::min(p1, p2) - 1.0, hi = std::max(p1, p2) + 1.0;
        if (poly_mutation(p1, lo, hi, 0.5, eta) != p1) ++mutation_misses;
    }
    std::ostringstream d;
    d << "u=0.5 SBX misses " << identity_misses << ", u=0.5 mutation misses " << mutation_misses
      << ", mean drift <= " << worst_ulps << " ulp over 1e5 samples";
    const bool ok = identity_misses == 0 && mutation_misses == 0 && worst_ulps <= 4.0;
    return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

Outcome metric_oracles() {
    double ssim_err = 0.0;
    for (int s = 0; s < 50; ++s) {
        const ChannelF a = test::random_plane(32, 32, 9000 + s);
        const ChannelF b = test::random_plane(32, 32, 9500 + s);
        ssim_err = std::max(ssim_err, std::abs(ssim(a, b) - test::naive_ssim(a, b)));
        ChannelF c = a;
        for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = 0.7 * a.data[i] + 0.3 * b.data[i];
        ssim_err = std::max(ssim_err, std::abs(ssim(a, c) - test::naive_ssim(a, c)));
    }

    const double p = psnr(ImageF(64, 64, 3, 0.2), ImageF(64, 64, 3, 0.7));
    const double psnr_err = std::abs(p - 10.0 * std::log10(4.0));

    double loe_max = 0.0;
    std::mt19937_64 gen(17);
    for (int t = 0; t < 5; ++t) {
        const ImageF img = test::random_image(80, 60, 100 + t);
        // Random strictly increasing piecewise-linear map.
        std::vector<double> knots{0.0};
        for (int k = 0; k < 6; ++k) knots.push_back(knots.back() + 0.05 + std::uniform_real_distribution<double>(0, 1)(gen));
        ImageF mapped = img;
        for (double& x : mapped.data) {
            const double pos = x * 6.0;
            const int k = std::min(5, static_cast<int>(pos));
            x = (knots[k] + (pos - k) * (knots[k + 1] - knots[k])) / knots.back();
        }
        loe_max = std::max(loe_max, loe(img, mapped));
    }
    std::ostringstream d;
    d << "SSIM max err " << ssim_err << ", PSNR " << fmt("%.6f", p) << " dB (err " << psnr_err << "), LOE max "
      << loe_max << " over 5 remaps";
    const bool ok = ssim_err <= 1e-9 && psnr_err <= 1e-9 && std::abs(p - 6.0206) < 5e-5 && loe_max == 0.0;
    return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

Outcome dichotomy_analytics() {
    const int n = 1 << 21;
    ChannelF x(n + 1, 1);
    for (int i = 0; i <= n; ++i) x.data[i] = static_cast<double>(i) / n;
    bool ok = true;
    std::ostringstream d;
    for (double g : {0.2, 0.4, 0.5, 0.8}) {
        const ChannelF f = dichotomy(x, g);
        const auto arg = static_cast<int>(std::max_element(f.data.begin(), f.data.end()) - f.data.begin());
        bool unimodal = true;
        for (int i = 1; i <= arg; ++i) unimodal &= f.data[i] >= f.data[i - 1];
        for (int i = arg + 1; i <= n; ++i) unimodal &= f.data[i] <= f.data[i - 1];
        const double expected = std::pow(g, 1.0 / (1.0 - g));
        const double err = std::abs(x.data[arg] - expected);
        ok &= unimodal && err <= 1e-6;
        if (g == 0.5) ok &= std::abs(f.data[arg] - 0.25) < 1e-12;
        d << "g=" << g << " argmax err " << fmt("%.2e", err) << (unimodal ? "" : " NOT unimodal") << "; ";
    }
    std::string detail = d.str();
    detail.resize(detail.size() - 2);
    return {ok ? Verdict::Pass : Verdict::Fail, detail};
}

Outcome synthetic_round_trip(const std::string& photo) {
    const ImageU8 ref = photo.empty() ? synthetic_scene(600, 400, 1) : read_png(photo);
    const ImageU8 low = synth_darken(ref, 3.0);
    const double baseline = psnr(normalize_u8(low), normalize_u8(ref));

    GAConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 30;
    cfg.runs = 3;
    cfg.rng_seed = 1;
    cfg.workers = 1;
    const auto r = optimize_image(low, ref, Method::Tuna, cfg);

    std::ostringstream d;
    d << (photo.empty() ? "synthetic scene" : std::filesystem::path(photo).filename().string()) << " " << ref.width
      << "x" << ref.height << ": baseline " << fmt("%.2f", baseline) << " dB, enhanced " << fmt("%.2f", r.psnr)
      << " dB / SSIM " << fmt("%.4f", r.ssim);
    const bool ok = baseline < 15.0 && r.psnr >= 25.0 && r.ssim >= 0.85;
    return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

Outcome dataset_scale() {
    const char* root = std::getenv("DTUNA_LOL_DIR");
    if (root == nullptr || *root == '\0') return {Verdict::Skip, "DTUNA_LOL_DIR not set (LOLv1 eval15 not available)"};
    const char* full_env = std::getenv("DTUNA_LOL_FULL");
    const bool full = full_env != nullptr && std::string(full_env) == "1";

    RunConfig cfg;
    cfg.dataset = root;
    cfg.method = Method::Tuna;
    cfg.ga.population_size = 70;
    cfg.ga.generations = full ? 50 : 20;
    cfg.ga.runs = full ? 50 : 5;
    cfg.ga.rng_seed = 0;
    cfg.workers = default_workers();
    const auto start = std::chrono::steady_clock::now();
    const BenchReport rep = run_benchmark(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto agg = rep.aggregate();

    std::ostringstream d;
    d << (full ? "full budget" : "smoke budget") << ", " << agg.psnr.count << " images, PSNR "
      << fmt("%.4f", agg.psnr.mean) << " +- " << fmt("%.4f", agg.psnr.stddev) << ", SSIM " << fmt("%.4f", agg.ssim.mean)
      << ", " << fmt("%.0f", secs) << " s";
    bool ok = rep.failures() == 0 && agg.psnr.count == 15;
    if (full) {
        ok &= std::abs(agg.psnr.mean - 23.9426) <= 1.5 && std::abs(agg.ssim.mean - 0.8063) <= 0.05;
    } else {
        ok &= agg.psnr.mean >= 21.0 && secs < 1800.0;
    }
    return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

Outcome determinism() {
    test::TempDir dir("dtuna_accept");
    std::filesystem::create_directories(dir.path / "low");
    std::filesystem::create_directories(dir.path / "high");
    for (int i = 0; i < 4; ++i) {
        const ImageU8 ref = synthetic_scene(96, 64, 50 + i);
        const std::string name = "img" + std::to_string(i) + ".png";
        write_png(dir.path / "high" / name, ref);
        write_png(dir.path / "low" / name, synth_darken(ref, 2.0 + 0.5 * i, i, 0.01));
    }
    auto run = [&](std::size_t workers, const std::string& out) {
        RunConfig cfg;
        cfg.dataset = dir.path;
        cfg.ga.population_size = 14;
        cfg.ga.generations = 6;
        cfg.ga.runs = 2;
        cfg.ga.rng_seed = 123;
        cfg.workers = workers;
        cfg.record_timing = false;
        emit_csv(run_benchmark(cfg), dir.path / out);
        std::ifstream in(dir.path / out, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string a = run(1, "a.csv"), b = run(1, "b.csv"), c = run(8, "c.csv");
    const bool ok = !a.empty() && a == b && a == c && parse_csv(a).rows.size() == 4;
    return {ok ? Verdict::Pass : Verdict::Fail,
            std::string("two runs ") + (a == b ? "identical" : "DIFFER") + ", workers 1 vs 8 " +
                (a == c ? "identical" : "DIFFER") + " (" + std::to_string(a.size()) + " bytes)"};
}

Outcome pipeline_fuzz() {
    const ImageU8 scene = synthetic_scene(96, 64, 3);
    const std::vector<ImageU8> images{scene, synth_darken(scene, 3.0, 1, 0.02), test::random_u8(64, 64, 5)};
    const ParamBounds bounds = ParamBounds::tuna_default();
    Rng rng(31);
    std::size_t faults = 0, runs = 0;
    std::string first_fault;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> genes(bounds.size());
        for (std::size_t g = 0; g < genes.size(); ++g) {
            genes[g] = bounds[g].low + rng.uniform() * (bounds[g].high - bounds[g].low);
        }
        for (const auto& img : images) {
            for (Method m : {Method::Tuna, Method::TunaYCbCr}) {
                ++runs;
                try {
                    const auto out = apply_method(m, img, genes);
                    if (out.image.width != img.width || out.image.data.size() != img.data.size()) ++faults;
                } catch (const std::exception& e) {
                    if (faults++ == 0) first_fault = e.what();
                }
            }
        }
    }

    ImageU8 flat(48, 32);
    std::fill(flat.data.begin(), flat.data.end(), 100);
    bool flagged = false;
    try {
        flagged = apply_method(Method::Tuna, flat, std::vector<double>{1, 1, 1, 1, 1, 0.5, 1}).degeneracy.any();
    } catch (const std::exception& e) {
        first_fault = e.what();
        ++faults;
    }
    std::ostringstream d;
    d << runs << " enhancements, " << faults << " faults, flat image " << (flagged ? "flagged" : "NOT flagged");
    if (!first_fault.empty()) d << " (" << first_fault << ")";
    return {faults == 0 && flagged ? Verdict::Pass : Verdict::Fail, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dtuna acceptance criteria"};
    std::string photo;
    int only = 0;
    app.add_option("--photo", photo, "8-bit photo for criterion 4 (default: procedural scene)");
    app.add_option("--only", only, "run a single criterion");
    CLI11_PARSE(app, argc, argv);
    if (!photo.empty() && !std::filesystem::exists(photo)) photo.clear();

    const std::vector<Criterion> criteria{
        {1, "operator-algebra", 5, operator_algebra},
        {2, "metric-oracles", 30, metric_oracles},
        {3, "dichotomy-analytics", 1, dichotomy_analytics},
        {4, "synthetic-round-trip", 120, [&] { return synthetic_round_trip(photo); }},
        {5, "dataset-scale", 0, dataset_scale},
        {6, "determinism", 0, determinism},
        {7, "pipeline-fuzz", 0, pipeline_fuzz},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {Verdict::Fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.verdict == Verdict::Pass && c.limit_seconds > 0 && secs >= c.limit_seconds) {
            o.verdict = Verdict::Fail;
            o.detail += "; over the " + fmt("%.0f", c.limit_seconds) + " s limit";
        }
        const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
        std::printf("%s  %d %-21s %s (%.2f s)\n", tag, c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.verdict == Verdict::Fail;
    }
    return failures == 0 ? 0 : 1;
}
