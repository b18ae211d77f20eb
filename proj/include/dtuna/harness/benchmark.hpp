#pragma once

#include <functional>
#include <string>

#include "dtuna/harness/config.hpp"
#include "dtuna/harness/dataset.hpp"
#include "dtuna/harness/report.hpp"

namespace dtuna {

/// Called after each image finishes; may run on a worker thread.
using ProgressFn = std::function<void(const BenchRow&)>;

/// GA seed for one image: base seed plus the stable hash of its file name,
/// so results do not depend on enumeration order.
std::uint64_t image_seed(std::uint64_t base_seed, std::string_view image_name);

/// Enhances every pair (GA-tuned or with fixed params), scores the quantized
/// output, and assembles the report in file-name order. Per-image failures are
/// recorded in their row and never abort the batch.
BenchReport run_benchmark(const PairedDataset& dataset, const RunConfig& cfg, const ProgressFn& progress = {});
BenchReport run_benchmark(const RunConfig& cfg, const ProgressFn& progress = {});

}  // namespace dtuna
