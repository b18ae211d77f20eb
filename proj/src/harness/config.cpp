#include "dtuna/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dtuna/harness/png_io.hpp"

namespace dtuna {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_real(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidArgument("not a number: '" + std::string(s) + "'");
    return v;
}

std::uint64_t parse_unsigned(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidArgument("not a non-negative integer: '" + std::string(s) + "'");
    }
    return v;
}

bool parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw InvalidArgument("not a boolean: '" + std::string(s) + "'");
}

void apply_key(std::string_view key, std::string_view value, RunConfig& cfg) {
    if (key == "method") cfg.method = parse_method(value);
    else if (key == "population_size") cfg.ga.population_size = parse_unsigned(value);
    else if (key == "generations") cfg.ga.generations = parse_unsigned(value);
    else if (key == "runs") cfg.ga.runs = parse_unsigned(value);
    else if (key == "eta_x") cfg.ga.eta_x = parse_real(value);
    else if (key == "eta_m") cfg.ga.eta_m = parse_real(value);
    else if (key == "crossover_rate") cfg.ga.crossover_rate = parse_real(value);
    else if (key == "mutation_rate") cfg.ga.mutation_rate = parse_real(value);
    else if (key == "tournament_size") cfg.ga.tournament_size = parse_unsigned(value);
    else if (key == "elite_count") cfg.ga.elite_count = parse_unsigned(value);
    else if (key == "seed") cfg.ga.rng_seed = parse_unsigned(value);
    else if (key == "workers") cfg.workers = parse_unsigned(value);
    else if (key == "guided_radius") cfg.pipeline.guided.radius = static_cast<int>(parse_unsigned(value));
    else if (key == "guided_epsilon") cfg.pipeline.guided.epsilon = parse_real(value);
    else if (key == "gaussian_sigma") cfg.pipeline.gaussian_sigma = parse_real(value);
    else if (key == "use_ga") cfg.use_ga = parse_bool(value);
    else if (key == "record_timing") cfg.record_timing = parse_bool(value);
    else if (key == "params") cfg.fixed_params = parse_real_list(value);
    else if (key == "dataset") cfg.dataset = std::string(value);
    else if (key == "output_dir") cfg.output_dir = std::string(value);
    else if (key.starts_with("bounds.")) {
        const auto pair = parse_real_list(value);
        if (pair.size() != 2) throw InvalidArgument("bounds need 'low, high'");
        cfg.bound_overrides[std::string(key.substr(7))] = {pair[0], pair[1]};
    } else {
        throw InvalidArgument("unknown key '" + std::string(key) + "'");
    }
}

}  // namespace

std::size_t default_workers() {
    const char* env = std::getenv(kWorkersEnv);
    if (env == nullptr) return 1;
    try {
        const auto n = parse_unsigned(env);
        return n == 0 ? 1 : static_cast<std::size_t>(n);
    } catch (const InvalidArgument&) {
        return 1;
    }
}

std::vector<std::string> gene_names(Method m) {
    if (gene_count(m) == 1) return {"gamma"};
    std::vector<std::string> out;
    for (auto n : TunaParams::names()) out.emplace_back(n);
    return out;
}

ParamBounds RunConfig::bounds() const {
    ParamBounds b = default_bounds(method);
    const auto names = gene_names(method);
    for (const auto& [name, iv] : bound_overrides) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            throw InvalidArgument("bounds." + name + " is not a parameter of method " + std::string(method_name(method)));
        }
        b[static_cast<std::size_t>(it - names.begin())] = iv;
    }
    return b;
}

void RunConfig::validate() const {
    ga.validate();
    bounds().validate();
    pipeline.guided.validate();
    if (!(pipeline.gaussian_sigma > 0.0)) throw InvalidArgument("gaussian_sigma must be > 0");
    if (!use_ga && fixed_params.size() != gene_count(method)) {
        throw InvalidArgument("fixed params for " + std::string(method_name(method)) + " need " +
                              std::to_string(gene_count(method)) + " value(s)");
    }
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    text = trim(unquote(trim(text)));
    if (text.starts_with('[') && text.ends_with(']')) text = text.substr(1, text.size() - 2);
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void apply_config_text(std::string_view text, RunConfig& cfg) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty() || (line.front() == '[' && line.back() == ']')) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidArgument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_key(trim(line.substr(0, eq)), unquote(trim(line.substr(eq + 1))), cfg);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(const std::filesystem::path& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(ss.str(), cfg);
}

}  // namespace dtuna
