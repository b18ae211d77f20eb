#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtuna/enhance.hpp"
#include "dtuna/quality.hpp"

namespace dtuna {

struct BenchRow {
    std::string image;
    Method method = Method::Tuna;
    std::vector<double> params;  ///< gene vector in method order
    MetricReport metrics;
    double seconds = 0.0;
    std::size_t evaluations = 0;
    Degeneracy degeneracy;
    std::optional<std::string> error;  ///< set when the image failed

    bool ok() const { return !error.has_value(); }
};

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample (n - 1) standard deviation; 0 when n = 1
    std::size_t count = 0;
};

/// Mean and sample standard deviation.
Stat summarize(const std::vector<double>& values);

struct BenchAggregate {
    Stat psnr, ssim, loe, seconds;
};

struct BenchReport {
    std::string dataset;
    Method method = Method::Tuna;
    std::vector<BenchRow> rows;

    std::size_t failures() const;
    /// Recomputed from the successful rows each call.
    BenchAggregate aggregate() const;
};

inline constexpr std::string_view kCsvHeader = "image,method,psnr,ssim,loe,seconds,a,b,c,d,e,gamma,gamma1";

/// Shortest decimal that round-trips to the same double.
std::string format_real(double v);

/// UTF-8, LF line endings. Rows follow the header; a trailing
/// `AGGREGATE,<method>,mean±std,...` row is written when at least one row
/// succeeded. Failed rows keep their image and method with empty metrics.
std::string to_csv(const BenchReport& report);
std::string to_markdown(const BenchReport& report);

void emit_csv(const BenchReport& report, const std::filesystem::path& path);
void emit_markdown(const BenchReport& report, const std::filesystem::path& path);

struct ParsedCsv {
    std::vector<BenchRow> rows;
    std::optional<BenchAggregate> aggregate;
};

/// Reads a CSV produced by to_csv.
ParsedCsv parse_csv(std::string_view text);

}  // namespace dtuna
