#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dtuna/enhance.hpp"

namespace dtuna {

/// Seeded generator with platform-independent derived distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [0, n), unbiased.
    std::size_t below(std::size_t n);
    /// Standard normal (Box-Muller).
    double normal();

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

struct GAConfig {
    std::size_t population_size = 0;       ///< 0 selects 10 per gene
    std::size_t generations = 50;
    std::size_t runs = 50;
    double eta_x = 2.0;                    ///< SBX distribution index
    double eta_m = 25.0;                   ///< polynomial mutation distribution index
    double crossover_rate = 0.9;           ///< per-gene SBX probability
    std::optional<double> mutation_rate;   ///< per-gene; unset selects 1 / gene count
    std::size_t tournament_size = 2;
    std::size_t elite_count = 1;
    std::uint64_t rng_seed = 0;
    std::size_t workers = 1;               ///< concurrent fitness evaluations

    void validate() const;
    std::size_t effective_population(std::size_t genes) const;
    double effective_mutation_rate(std::size_t genes) const;
};

struct Chromosome {
    std::vector<double> genes;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct EvolveResult {
    Chromosome best;
    double best_fitness = -std::numeric_limits<double>::infinity();
    std::vector<double> fitness_trace;  ///< best of population, one entry per generation (incl. initial)
    std::size_t evaluations = 0;
    std::size_t nan_evaluations = 0;    ///< evaluations that returned NaN and were culled

    friend bool operator==(const EvolveResult&, const EvolveResult&) = default;
};

using FitnessFn = std::function<double(std::span<const double>)>;

/// Simulated binary crossover of one gene pair.
///   beta = (2u)^(1/(eta+1))             if u < 0.5
///          (1 / (2(1-u)))^(1/(eta+1))   otherwise
/// u must lie in [0, 1); u = 1 makes beta unbounded and is rejected.
std::pair<double, double> sbx_crossover(double p1, double p2, double u, double eta_x);

/// Polynomial mutation, clamped to [low, up].
///   delta = (2u)^(1/(eta+1)) - 1         if u < 0.5
///           1 - (2(1-u))^(1/(eta+1))     otherwise
double poly_mutation(double p, double low, double up, double u, double eta_m);

/// Best of k uniformly drawn indices (with replacement). Ties go to the lower index.
std::size_t tournament_select(std::span<const double> fitnesses, std::size_t k, Rng& rng);

/// Elitist generational GA maximizing `eval` within `bounds`. Deterministic for a
/// given cfg.rng_seed regardless of cfg.workers.
EvolveResult evolve(const FitnessFn& eval, const ParamBounds& bounds, const GAConfig& cfg);

struct OptimizeResult {
    EvolveResult best;                    ///< winning run
    std::size_t best_run = 0;
    std::vector<double> run_best_fitness; ///< one per run
    std::size_t evaluations = 0;          ///< across all runs
    double psnr = 0.0;                    ///< of the winning parameters, on the quantized output
    double ssim = 0.0;
};

/// Tunes `method` for one image pair: cfg.runs independent GA runs seeded
/// cfg.rng_seed + i, each scoring fitness(psnr, ssim) of the quantized output
/// against `reference`. Returns the best run.
OptimizeResult optimize_image(const ImageU8& low, const ImageU8& reference, Method method, const GAConfig& cfg,
                              const ParamBounds& bounds, const PipelineSettings& settings = {});

OptimizeResult optimize_image(const ImageU8& low, const ImageU8& reference, Method method, const GAConfig& cfg);

}  // namespace dtuna
