#include "dtuna/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dtuna/harness/png_io.hpp"

namespace dtuna {

namespace {

constexpr std::string_view kPlusMinus = "±";

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

double parse_field(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidArgument("CSV: bad number '" + std::string(s) + "'");
    return v;
}

Stat parse_stat(std::string_view s) {
    const auto pm = s.find(kPlusMinus);
    if (pm == std::string_view::npos) throw InvalidArgument("CSV: aggregate field lacks mean±std");
    return {parse_field(s.substr(0, pm)), parse_field(s.substr(pm + kPlusMinus.size())), 0};
}

std::string stat_field(const Stat& s) { return format_real(s.mean) + std::string(kPlusMinus) + format_real(s.stddev); }

std::string fixed(double v, int digits) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(digits);
    ss << v;
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

Stat summarize(const std::vector<double>& values) {
    Stat s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::size_t BenchReport::failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.ok() ? 0 : 1;
    return n;
}

BenchAggregate BenchReport::aggregate() const {
    std::vector<double> psnr, ssim, loe, seconds;
    for (const auto& r : rows) {
        if (!r.ok()) continue;
        psnr.push_back(r.metrics.psnr);
        ssim.push_back(r.metrics.ssim);
        loe.push_back(r.metrics.loe);
        seconds.push_back(r.seconds);
    }
    return {summarize(psnr), summarize(ssim), summarize(loe), summarize(seconds)};
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string to_csv(const BenchReport& report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : report.rows) {
        out += csv_field(r.image);
        out += ',';
        out += method_name(r.method);
        if (!r.ok()) {
            out += ",,,,,,,,,,,\n";
            continue;
        }
        for (double v : {r.metrics.psnr, r.metrics.ssim, r.metrics.loe, r.seconds}) out += ',' + format_real(v);
        // a,b,c,d,e,gamma,gamma1
        std::vector<std::string> cols(TunaParams::kCount);
        if (r.params.size() == TunaParams::kCount) {
            for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = format_real(r.params[i]);
        } else if (r.params.size() == 1) {
            cols[5] = format_real(r.params[0]);
        }
        for (const auto& c : cols) out += ',' + c;
        out += '\n';
    }
    const auto agg = report.aggregate();
    if (agg.psnr.count > 0) {
        out += "AGGREGATE,";
        out += method_name(report.method);
        for (const Stat* s : {&agg.psnr, &agg.ssim, &agg.loe, &agg.seconds}) out += ',' + stat_field(*s);
        out += ",,,,,,,\n";
    }
    return out;
}

std::string to_markdown(const BenchReport& report) {
    const auto agg = report.aggregate();
    const std::string method(method_name(report.method));
    std::ostringstream md;
    md << "# Benchmark: " << report.dataset << "\n\n";
    md << "| Metric | " << method << " |\n|---|---|\n";
    md << "| PSNR ↑ | " << fixed(agg.psnr.mean, 4) << " ± " << fixed(agg.psnr.stddev, 4) << " |\n";
    md << "| SSIM ↑ | " << fixed(agg.ssim.mean, 4) << " ± " << fixed(agg.ssim.stddev, 4) << " |\n";
    md << "| LOE ↓ | " << fixed(agg.loe.mean, 4) << " ± " << fixed(agg.loe.stddev, 4) << " |\n";
    md << "\nImages: " << agg.psnr.count << " succeeded, " << report.failures() << " failed.\n";

    md << "\n## Per image\n\n| Image | PSNR | SSIM | LOE | Seconds | Parameters |\n|---|---|---|---|---|---|\n";
    for (const auto& r : report.rows) {
        if (!r.ok()) continue;
        md << "| " << r.image << " | " << fixed(r.metrics.psnr, 4) << " | " << fixed(r.metrics.ssim, 4) << " | "
           << fixed(r.metrics.loe, 4) << " | " << fixed(r.seconds, 2) << " | ";
        for (std::size_t i = 0; i < r.params.size(); ++i) md << (i ? ", " : "") << fixed(r.params[i], 4);
        md << " |\n";
    }
    if (report.failures() > 0) {
        md << "\n## Failures\n\n";
        for (const auto& r : report.rows) {
            if (!r.ok()) md << "- " << r.image << ": " << *r.error << "\n";
        }
    }
    return md.str();
}

void emit_csv(const BenchReport& report, const std::filesystem::path& path) { write_text(path, to_csv(report)); }

void emit_markdown(const BenchReport& report, const std::filesystem::path& path) {
    write_text(path, to_markdown(report));
}

ParsedCsv parse_csv(std::string_view text) {
    ParsedCsv out;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        const std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        if (line.empty()) continue;
        if (header) {
            if (line != kCsvHeader) throw InvalidArgument("CSV: unexpected header");
            header = false;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 13) throw InvalidArgument("CSV: expected 13 fields, got " + std::to_string(f.size()));
        if (f[0] == "AGGREGATE") {
            out.aggregate = BenchAggregate{parse_stat(f[2]), parse_stat(f[3]), parse_stat(f[4]), parse_stat(f[5])};
            continue;
        }
        BenchRow row;
        row.image = f[0];
        row.method = parse_method(f[1]);
        if (f[2].empty()) {
            row.error = "failed";
        } else {
            row.metrics.psnr = parse_field(f[2]);
            row.metrics.ssim = parse_field(f[3]);
            row.metrics.loe = parse_field(f[4]);
            row.metrics.fitness = fitness(row.metrics.psnr, row.metrics.ssim);
            row.seconds = parse_field(f[5]);
            if (gene_count(row.method) == 1) {
                row.params = {parse_field(f[11])};
            } else {
                for (std::size_t i = 6; i < 13; ++i) row.params.push_back(parse_field(f[i]));
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace dtuna
