#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dtuna/enhance.hpp"
#include "dtuna/evolve.hpp"

namespace dtuna {

/// Environment variable consulted for the default worker count.
inline constexpr const char* kWorkersEnv = "DTUNA_WORKERS";

/// Worker count from DTUNA_WORKERS, or 1 when unset or unparsable.
std::size_t default_workers();

struct RunConfig {
    std::filesystem::path dataset;
    Method method = Method::Tuna;
    GAConfig ga;
    std::map<std::string, Interval> bound_overrides;  ///< by gene name
    PipelineSettings pipeline;
    bool use_ga = true;
    std::vector<double> fixed_params;  ///< used when use_ga is false
    std::size_t workers = default_workers();
    bool record_timing = true;  ///< false writes 0 in the seconds column
    std::filesystem::path output_dir;  ///< enhanced images are saved here when set

    ParamBounds bounds() const;
    void validate() const;
};

/// Gene names in chromosome order: a..gamma1 for tuna, "gamma" for the plain variants.
std::vector<std::string> gene_names(Method m);

/// Applies a flat `key = value` document (one pair per line, `#` comments).
///
/// Keys: method, population_size, generations, runs, eta_x, eta_m,
/// crossover_rate, mutation_rate, tournament_size, elite_count, seed, workers,
/// guided_radius, guided_epsilon, gaussian_sigma, use_ga, params (comma list),
/// record_timing, and bounds.<gene> = low, high.
///
/// Unknown keys and malformed values throw InvalidArgument naming the line.
void apply_config_text(std::string_view text, RunConfig& cfg);
void apply_config_file(const std::filesystem::path& path, RunConfig& cfg);

/// Comma-separated reals, e.g. "1,0,0,0,1,0.5,1".
std::vector<double> parse_real_list(std::string_view text);

}  // namespace dtuna
