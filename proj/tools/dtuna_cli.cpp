// dtuna command-line front end: enhance, optimize, benchmark, metrics, synth-darken.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>

#include "dtuna/enhance.hpp"
#include "dtuna/evolve.hpp"
#include "dtuna/harness/benchmark.hpp"
#include "dtuna/harness/config.hpp"
#include "dtuna/harness/png_io.hpp"
#include "dtuna/quality.hpp"

namespace {

using json = nlohmann::json;
using namespace dtuna;

// Flags shared by the subcommands that build a RunConfig.
struct CommonOptions {
    std::string config_path;
    std::string method;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::size_t> population, generations, runs;
    std::optional<int> guided_radius;
    std::optional<double> guided_epsilon, sigma;

    void attach(CLI::App* app, bool ga_flags) {
        app->add_option("--config", config_path, "flat key = value configuration file")->check(CLI::ExistingFile);
        app->add_option("--method", method, "dichotomy | dichotomy-filter | tuna | tuna-ycbcr");
        app->add_option("--guided-radius", guided_radius, "guided filter window half-width");
        app->add_option("--guided-epsilon", guided_epsilon, "guided filter regularization");
        app->add_option("--sigma", sigma, "Gaussian sigma for dichotomy-filter");
        if (ga_flags) {
            app->add_option("--seed", seed, "base RNG seed");
            app->add_option("--workers", workers, "worker threads (default from DTUNA_WORKERS)");
            app->add_option("--population", population, "GA population size (0 = 10 per parameter)");
            app->add_option("--generations", generations, "GA generations per run");
            app->add_option("--runs", runs, "independent GA runs per image");
        }
    }

    RunConfig build() const {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(config_path, cfg);
        if (!method.empty()) cfg.method = parse_method(method);
        if (seed) cfg.ga.rng_seed = *seed;
        if (workers) cfg.workers = *workers;
        if (population) cfg.ga.population_size = *population;
        if (generations) cfg.ga.generations = *generations;
        if (runs) cfg.ga.runs = *runs;
        if (guided_radius) cfg.pipeline.guided.radius = *guided_radius;
        if (guided_epsilon) cfg.pipeline.guided.epsilon = *guided_epsilon;
        if (sigma) cfg.pipeline.gaussian_sigma = *sigma;
        return cfg;
    }
};

std::vector<double> params_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    const json doc = json::parse(in);
    return doc.at("genes").get<std::vector<double>>();
}

json params_json(Method method, std::span<const double> genes) {
    json named = json::object();
    const auto names = gene_names(method);
    for (std::size_t i = 0; i < genes.size(); ++i) named[names[i]] = genes[i];
    return named;
}

int run_enhance(const CommonOptions& common, const std::string& input, const std::string& output,
                const std::string& params_text, const std::string& params_file) {
    RunConfig cfg = common.build();
    std::vector<double> genes;
    if (!params_file.empty()) genes = params_from_json(params_file);
    else if (!params_text.empty()) genes = parse_real_list(params_text);
    else if (!cfg.fixed_params.empty()) genes = cfg.fixed_params;
    else throw InvalidArgument("enhance needs --params or --params-json");

    const auto result = apply_method(cfg.method, read_png(input), genes, cfg.pipeline);
    write_png(output, result.image);
    if (result.degeneracy.any()) std::cerr << "warning: flat intermediate plane; output may be blank\n";
    return 0;
}

int run_optimize(const CommonOptions& common, const std::string& low_path, const std::string& ref_path,
                 const std::string& out_path, const std::string& image_out) {
    RunConfig cfg = common.build();
    cfg.validate();
    GAConfig ga = cfg.ga;
    ga.workers = cfg.workers;
    const ImageU8 low = read_png(low_path);
    const ImageU8 ref = read_png(ref_path);
    const auto opt = optimize_image(low, ref, cfg.method, ga, cfg.bounds(), cfg.pipeline);

    json doc;
    doc["method"] = std::string(method_name(cfg.method));
    doc["genes"] = opt.best.best.genes;
    doc["params"] = params_json(cfg.method, opt.best.best.genes);
    doc["fitness"] = opt.best.best_fitness;
    doc["psnr"] = opt.psnr;
    doc["ssim"] = opt.ssim;
    doc["best_run"] = opt.best_run;
    doc["run_best_fitness"] = opt.run_best_fitness;
    doc["evaluations"] = opt.evaluations;
    doc["fitness_trace"] = opt.best.fitness_trace;
    doc["seed"] = cfg.ga.rng_seed;

    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot write '" + out_path + "'");
        out << text;
        std::cerr << "psnr " << opt.psnr << " dB, ssim " << opt.ssim << ", fitness " << opt.best.best_fitness << "\n";
    }
    if (!image_out.empty()) write_png(image_out, apply_method(cfg.method, low, opt.best.best.genes, cfg.pipeline).image);
    return 0;
}

int run_bench(const CommonOptions& common, const std::string& dataset, const std::string& report_path,
              const std::string& markdown_path, const std::string& params_text, bool no_timing,
              const std::string& save_dir) {
    RunConfig cfg = common.build();
    if (!dataset.empty()) cfg.dataset = dataset;
    if (!params_text.empty()) {
        cfg.use_ga = false;
        cfg.fixed_params = parse_real_list(params_text);
    }
    if (no_timing) cfg.record_timing = false;
    if (!save_dir.empty()) cfg.output_dir = save_dir;

    const PairedDataset ds = load_paired_dataset(cfg.dataset);
    for (const auto& w : ds.warnings) std::cerr << "warning: " << w << "\n";
    std::mutex log_mutex;
    const auto report = run_benchmark(ds, cfg, [&](const BenchRow& row) {
        std::lock_guard lock(log_mutex);
        if (row.ok()) {
            std::cerr << row.image << ": psnr " << std::fixed << std::setprecision(4) << row.metrics.psnr << " ssim "
                      << row.metrics.ssim << " loe " << row.metrics.loe << "\n";
        } else {
            std::cerr << row.image << ": FAILED " << *row.error << "\n";
        }
    });
    emit_csv(report, report_path);
    if (!markdown_path.empty()) emit_markdown(report, markdown_path);
    const auto agg = report.aggregate();
    std::cerr << "mean psnr " << agg.psnr.mean << " ± " << agg.psnr.stddev << ", mean ssim " << agg.ssim.mean << " ± "
              << agg.ssim.stddev << " over " << agg.psnr.count << " image(s)\n";
    return report.failures() == 0 ? 0 : 1;
}

int run_metrics(const std::string& a_path, const std::string& b_path, bool as_json) {
    const ImageF a = normalize_u8(read_png(a_path));
    const ImageF b = normalize_u8(read_png(b_path));
    const double p = psnr(a, b);
    const double s = ssim(a, b);
    const double l = loe(a, b);
    if (as_json) {
        std::cout << json{{"psnr", p}, {"ssim", s}, {"loe", l}, {"fitness", fitness(p, s)}}.dump(2) << "\n";
    } else {
        std::cout << std::setprecision(6) << std::fixed << "psnr    " << p << "\nssim    " << s << "\nloe     " << l
                  << "\nfitness " << fitness(p, s) << "\n";
    }
    return 0;
}

int run_synth(const std::string& input, const std::string& output, double gamma, double noise, std::uint64_t seed) {
    write_png(output, synth_darken(read_png(input), gamma, seed, noise));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dichotomy-function low-light enhancement with GA parameter tuning"};
    app.require_subcommand(1);

    CommonOptions enhance_opts, optimize_opts, bench_opts;

    auto* enhance = app.add_subcommand("enhance", "apply an enhancement method with fixed parameters");
    std::string en_in, en_out, en_params, en_params_file;
    enhance->add_option("--input", en_in, "low-light PNG")->required()->check(CLI::ExistingFile);
    enhance->add_option("--output", en_out, "enhanced PNG")->required();
    enhance->add_option("--params", en_params, "comma-separated parameters (tuna: a,b,c,d,e,gamma,gamma1)");
    enhance->add_option("--params-json", en_params_file, "parameters file written by 'optimize'");
    enhance_opts.attach(enhance, false);

    auto* optimize = app.add_subcommand("optimize", "tune parameters for one image pair with the GA");
    std::string op_low, op_ref, op_out, op_image;
    optimize->add_option("--low", op_low, "low-light PNG")->required()->check(CLI::ExistingFile);
    optimize->add_option("--ref", op_ref, "reference PNG")->required()->check(CLI::ExistingFile);
    optimize->add_option("--out", op_out, "parameters JSON (default: stdout)");
    optimize->add_option("--output-image", op_image, "also write the enhanced PNG");
    optimize_opts.attach(optimize, true);

    auto* bench = app.add_subcommand("benchmark", "run a method over a low/ + high/ paired dataset");
    std::string bn_dataset, bn_report, bn_md, bn_params, bn_save;
    bool bn_no_timing = false;
    bench->add_option("--dataset", bn_dataset, "directory holding low/ and high/");
    bench->add_option("--report", bn_report, "CSV report path")->required();
    bench->add_option("--markdown", bn_md, "Markdown summary path");
    bench->add_option("--params", bn_params, "skip the GA and apply these parameters");
    bench->add_flag("--no-timing", bn_no_timing, "write 0 in the seconds column (byte-reproducible CSV)");
    bench->add_option("--save-images", bn_save, "directory for enhanced outputs");
    bench_opts.attach(bench, true);

    auto* metrics = app.add_subcommand("metrics", "PSNR, SSIM, LOE and fitness of B against A");
    std::string mt_a, mt_b;
    bool mt_json = false;
    metrics->add_option("--a", mt_a, "original / reference PNG")->required()->check(CLI::ExistingFile);
    metrics->add_option("--b", mt_b, "enhanced PNG")->required()->check(CLI::ExistingFile);
    metrics->add_flag("--json", mt_json, "print JSON");

    auto* synth = app.add_subcommand("synth-darken", "darken a PNG with a power law");
    std::string sy_in, sy_out;
    double sy_gamma = 3.0, sy_noise = 0.0;
    std::uint64_t sy_seed = 0;
    synth->add_option("--input", sy_in, "reference PNG")->required()->check(CLI::ExistingFile);
    synth->add_option("--gamma", sy_gamma, "darkening exponent (>= 1)");
    synth->add_option("--output", sy_out, "darkened PNG (default: <input>_dark.png)");
    synth->add_option("--noise", sy_noise, "additive Gaussian noise sigma on [0,1]");
    synth->add_option("--seed", sy_seed, "noise seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enhance) return run_enhance(enhance_opts, en_in, en_out, en_params, en_params_file);
        if (*optimize) return run_optimize(optimize_opts, op_low, op_ref, op_out, op_image);
        if (*bench) return run_bench(bench_opts, bn_dataset, bn_report, bn_md, bn_params, bn_no_timing, bn_save);
        if (*metrics) return run_metrics(mt_a, mt_b, mt_json);
        if (*synth) {
            if (sy_out.empty()) {
                std::filesystem::path p(sy_in);
                sy_out = (p.parent_path() / (p.stem().string() + "_dark.png")).string();
            }
            return run_synth(sy_in, sy_out, sy_gamma, sy_noise, sy_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
