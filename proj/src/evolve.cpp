#include "dtuna/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dtuna/parallel.hpp"
#include "dtuna/quality.hpp"

namespace dtuna {

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw InvalidArgument("Rng::below: empty range");
    const std::uint64_t bound = n;
    // Rejection keeps the result unbiased for any n.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

double Rng::normal() {
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void GAConfig::validate() const {
    if (population_size == 1) throw InvalidArgument("GAConfig: population_size must be >= 2");
    if (!(eta_x >= 0.0) || !(eta_m >= 0.0)) throw InvalidArgument("GAConfig: distribution indices must be >= 0");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw InvalidArgument("GAConfig: crossover_rate outside [0,1]");
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw InvalidArgument("GAConfig: mutation_rate outside [0,1]");
    }
    if (tournament_size < 1) throw InvalidArgument("GAConfig: tournament_size must be >= 1");
    if (runs < 1) throw InvalidArgument("GAConfig: runs must be >= 1");
}

std::size_t GAConfig::effective_population(std::size_t genes) const {
    return population_size != 0 ? population_size : std::max<std::size_t>(2, 10 * genes);
}

double GAConfig::effective_mutation_rate(std::size_t genes) const {
    return mutation_rate ? *mutation_rate : 1.0 / static_cast<double>(std::max<std::size_t>(genes, 1));
}

std::pair<double, double> sbx_crossover(double p1, double p2, double u, double eta_x) {
    if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("sbx_crossover: u must lie in [0, 1)");
    const double exponent = 1.0 / (eta_x + 1.0);
    const double beta = u < 0.5 ? std::pow(2.0 * u, exponent) : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
    const double c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2);
    const double c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2);
    return {c1, c2};
}

double poly_mutation(double p, double low, double up, double u, double eta_m) {
    if (!(low < up)) throw InvalidArgument("poly_mutation: low must be < up");
    const double exponent = 1.0 / (eta_m + 1.0);
    const double delta = u < 0.5 ? std::pow(2.0 * u, exponent) - 1.0 : 1.0 - std::pow(2.0 * (1.0 - u), exponent);
    return std::clamp(p + delta * (up - low), low, up);
}

std::size_t tournament_select(std::span<const double> fitnesses, std::size_t k, Rng& rng) {
    if (fitnesses.empty()) throw InvalidArgument("tournament_select: empty population");
    std::size_t best = rng.below(fitnesses.size());
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t cand = rng.below(fitnesses.size());
        if (fitnesses[cand] > fitnesses[best] || (fitnesses[cand] == fitnesses[best] && cand < best)) best = cand;
    }
    return best;
}

namespace {

struct Evaluator {
    const FitnessFn& eval;
    std::size_t workers;
    std::size_t evaluations = 0;
    std::size_t nan_evaluations = 0;

    std::vector<double> operator()(const std::vector<Chromosome>& batch) {
        std::vector<double> out(batch.size());
        parallel_for(batch.size(), workers, [&](std::size_t i) { out[i] = eval(batch[i].genes); });
        for (double& f : out) {
            if (std::isnan(f)) {
                f = -std::numeric_limits<double>::infinity();
                ++nan_evaluations;
            }
        }
        evaluations += batch.size();
        return out;
    }
};

// Indices sorted by fitness, best first, ties by index.
std::vector<std::size_t> ranking(const std::vector<double>& fit) {
    std::vector<std::size_t> order(fit.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });
    return order;
}

double sample_open_u(Rng& rng) {
    double u = rng.uniform();
    while (u >= 1.0) u = rng.uniform();
    return u;
}

}  // namespace

EvolveResult evolve(const FitnessFn& eval, const ParamBounds& bounds, const GAConfig& cfg) {
    cfg.validate();
    bounds.validate();
    const std::size_t genes = bounds.size();
    const std::size_t pop_size = cfg.effective_population(genes);
    const std::size_t elites = std::min(cfg.elite_count, pop_size);
    const double mutation_rate = cfg.effective_mutation_rate(genes);

    Rng rng(cfg.rng_seed);
    Evaluator evaluate{eval, cfg.workers};
    EvolveResult result;

    std::vector<Chromosome> population(pop_size);
    for (auto& c : population) {
        c.genes.resize(genes);
        for (std::size_t g = 0; g < genes; ++g) {
            c.genes[g] = bounds[g].low + rng.uniform() * (bounds[g].high - bounds[g].low);
        }
    }
    std::vector<double> fit = evaluate(population);

    auto record = [&] {
        const auto order = ranking(fit);
        const std::size_t top = order.front();
        result.fitness_trace.push_back(fit[top]);
        if (result.best.genes.empty() || fit[top] > result.best_fitness) {
            result.best_fitness = fit[top];
            result.best = population[top];
        }
        return order;
    };
    auto order = record();

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Chromosome> next;
        std::vector<double> next_fit;
        next.reserve(pop_size);
        for (std::size_t i = 0; i < elites; ++i) {
            next.push_back(population[order[i]]);
            next_fit.push_back(fit[order[i]]);
        }

        std::vector<Chromosome> children;
        while (next.size() + children.size() < pop_size) {
            Chromosome c1 = population[tournament_select(fit, cfg.tournament_size, rng)];
            Chromosome c2 = population[tournament_select(fit, cfg.tournament_size, rng)];
            for (std::size_t g = 0; g < genes; ++g) {
                if (rng.uniform() < cfg.crossover_rate) {
                    const auto [x1, x2] = sbx_crossover(c1.genes[g], c2.genes[g], sample_open_u(rng), cfg.eta_x);
                    c1.genes[g] = std::clamp(x1, bounds[g].low, bounds[g].high);
                    c2.genes[g] = std::clamp(x2, bounds[g].low, bounds[g].high);
                }
            }
            for (Chromosome* child : {&c1, &c2}) {
                for (std::size_t g = 0; g < genes; ++g) {
                    if (rng.uniform() < mutation_rate) {
                        child->genes[g] =
                            poly_mutation(child->genes[g], bounds[g].low, bounds[g].high, rng.uniform(), cfg.eta_m);
                    }
                }
            }
            children.push_back(std::move(c1));
            if (next.size() + children.size() < pop_size) children.push_back(std::move(c2));
        }

        const std::vector<double> child_fit = evaluate(children);
        for (std::size_t i = 0; i < children.size(); ++i) {
            next.push_back(std::move(children[i]));
            next_fit.push_back(child_fit[i]);
        }
        population = std::move(next);
        fit = std::move(next_fit);
        order = record();
    }

    result.evaluations = evaluate.evaluations;
    result.nan_evaluations = evaluate.nan_evaluations;
    return result;
}

OptimizeResult optimize_image(const ImageU8& low, const ImageU8& reference, Method method, const GAConfig& cfg,
                              const ParamBounds& bounds, const PipelineSettings& settings) {
    low.validate();
    reference.validate();
    if (low.width != reference.width || low.height != reference.height) {
        throw InvalidArgument("optimize_image: low and reference dimensions differ");
    }
    if (bounds.size() != gene_count(method)) {
        throw InvalidArgument("optimize_image: bounds do not match the method's parameter count");
    }
    const ReferenceScorer scorer(normalize_u8(reference));
    std::optional<TunaPipeline> tuna;
    if (method == Method::Tuna || method == Method::TunaYCbCr) {
        tuna.emplace(low, TunaSettings{settings.guided, method == Method::Tuna ? FilterSpace::Rgb : FilterSpace::YCbCr});
    }
    const FitnessFn eval = [&](std::span<const double> genes) {
        const ImageU8 enhanced =
            tuna ? (*tuna)(TunaParams::from_span(genes)).image : apply_method(method, low, genes, settings).image;
        return scorer.fitness(normalize_u8(enhanced));
    };

    OptimizeResult out;
    for (std::size_t run = 0; run < cfg.runs; ++run) {
        GAConfig run_cfg = cfg;
        run_cfg.rng_seed = cfg.rng_seed + run;
        EvolveResult r = evolve(eval, bounds, run_cfg);
        out.run_best_fitness.push_back(r.best_fitness);
        out.evaluations += r.evaluations;
        if (run == 0 || r.best_fitness > out.best.best_fitness) {
            out.best = std::move(r);
            out.best_run = run;
        }
    }
    const ImageF final_image = normalize_u8(apply_method(method, low, out.best.best.genes, settings).image);
    out.psnr = scorer.psnr(final_image);
    out.ssim = scorer.ssim(final_image);
    return out;
}

OptimizeResult optimize_image(const ImageU8& low, const ImageU8& reference, Method method, const GAConfig& cfg) {
    return optimize_image(low, reference, method, cfg, default_bounds(method));
}

}  // namespace dtuna
