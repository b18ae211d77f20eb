#include "dtuna/harness/benchmark.hpp"

#include <chrono>

#include "dtuna/harness/png_io.hpp"
#include "dtuna/parallel.hpp"

namespace dtuna {

std::uint64_t image_seed(std::uint64_t base_seed, std::string_view image_name) {
    return base_seed + stable_hash(image_name);
}

namespace {

BenchRow process_pair(const ImagePair& pair, const RunConfig& cfg, const ParamBounds& bounds,
                      std::size_t eval_workers) {
    BenchRow row;
    row.image = pair.name;
    row.method = cfg.method;
    const auto start = std::chrono::steady_clock::now();
    try {
        const ImageU8 low = read_png(pair.low);
        const ImageU8 reference = read_png(pair.reference);
        if (cfg.use_ga) {
            GAConfig ga = cfg.ga;
            ga.rng_seed = image_seed(cfg.ga.rng_seed, pair.name);
            ga.workers = eval_workers;
            const auto opt = optimize_image(low, reference, cfg.method, ga, bounds, cfg.pipeline);
            row.params = opt.best.best.genes;
            row.evaluations = opt.evaluations;
        } else {
            row.params = cfg.fixed_params;
        }
        const auto enhanced = apply_method(cfg.method, low, row.params, cfg.pipeline);
        row.degeneracy = enhanced.degeneracy;
        row.metrics = measure(normalize_u8(low), normalize_u8(enhanced.image), normalize_u8(reference));
        if (!cfg.output_dir.empty()) write_png(cfg.output_dir / pair.name, enhanced.image);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    row.seconds = cfg.record_timing ? elapsed.count() : 0.0;
    return row;
}

}  // namespace

BenchReport run_benchmark(const PairedDataset& dataset, const RunConfig& cfg, const ProgressFn& progress) {
    cfg.validate();
    const ParamBounds bounds = cfg.bounds();
    if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);

    BenchReport report;
    report.dataset = dataset.name;
    report.method = cfg.method;
    report.rows.resize(dataset.pairs.size());

    const std::size_t workers = std::max<std::size_t>(cfg.workers, 1);
    const std::size_t image_workers = std::min(workers, std::max<std::size_t>(dataset.pairs.size(), 1));
    const std::size_t eval_workers = std::max<std::size_t>(1, workers / image_workers);
    parallel_for(dataset.pairs.size(), image_workers, [&](std::size_t i) {
        report.rows[i] = process_pair(dataset.pairs[i], cfg, bounds, eval_workers);
        if (progress) progress(report.rows[i]);
    });
    return report;
}

BenchReport run_benchmark(const RunConfig& cfg, const ProgressFn& progress) {
    return run_benchmark(load_paired_dataset(cfg.dataset), cfg, progress);
}

}  // namespace dtuna
