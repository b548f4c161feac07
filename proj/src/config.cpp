#include "udn/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "udn/errors.hpp"

namespace udn {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Block = std::map<std::string, Entry>;

struct ParsedFile {
    std::string origin;
    std::map<std::string, Block> blocks;
    std::map<std::string, int> block_lines;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

ParsedFile parse_blocks(const std::string& text, const std::string& origin) {
    ParsedFile file;
    file.origin = origin;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line == "}") {
            if (current.empty()) fail(origin, line_no, "unmatched '}'");
            current.clear();
            continue;
        }
        if (line.back() == '{') {
            if (!current.empty()) fail(origin, line_no, "nested blocks are not supported");
            current = trim(line.substr(0, line.size() - 1));
            if (current.empty()) fail(origin, line_no, "block needs a name");
            if (file.blocks.count(current)) fail(origin, line_no, "duplicate block '" + current + "'");
            file.blocks[current];
            file.block_lines[current] = line_no;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected 'key = value' (got '" + line + "')");
        }
        if (current.empty()) {
            fail(origin, line_no, "'key = value' outside any block");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            fail(origin, line_no, "empty key or value");
        }
        Block& block = file.blocks[current];
        if (block.count(key)) {
            fail(origin, line_no, "duplicate key '" + key + "' in block '" + current + "'");
        }
        block[key] = Entry{value, line_no, false};
    }
    if (!current.empty()) {
        fail(origin, line_no, "block '" + current + "' is never closed");
    }
    return file;
}

class Reader {
public:
    Reader(ParsedFile& file) : file_(file) {}

    bool has_block(const std::string& block) const { return file_.blocks.count(block) > 0; }

    Entry* find(const std::string& block, const std::string& key) {
        auto bit = file_.blocks.find(block);
        if (bit == file_.blocks.end()) return nullptr;
        auto kit = bit->second.find(key);
        if (kit == bit->second.end()) return nullptr;
        kit->second.used = true;
        return &kit->second;
    }

    double number(const std::string& block, const std::string& key) {
        Entry* e = require(block, key);
        return to_number(*e, key);
    }

    double number_or(const std::string& block, const std::string& key, double fallback) {
        Entry* e = find(block, key);
        return e ? to_number(*e, key) : fallback;
    }

    std::string word(const std::string& block, const std::string& key) {
        return require(block, key)->value;
    }

    std::string word_or(const std::string& block, const std::string& key,
                        const std::string& fallback) {
        Entry* e = find(block, key);
        return e ? e->value : fallback;
    }

    std::vector<double> list(const std::string& block, const std::string& key) {
        return to_list(*require(block, key), key);
    }

    std::vector<double> list_or(const std::string& block, const std::string& key,
                                std::vector<double> fallback) {
        Entry* e = find(block, key);
        return e ? to_list(*e, key) : fallback;
    }

    void check_all_used() const {
        for (const auto& [bname, block] : file_.blocks) {
            if (!known_blocks_.count(bname)) {
                fail(file_.origin, file_.block_lines.at(bname), "unknown block '" + bname + "'");
            }
            for (const auto& [key, entry] : block) {
                if (!entry.used) {
                    fail(file_.origin, entry.line,
                         "unknown key '" + key + "' in block '" + bname + "'");
                }
            }
        }
    }

    void expect_blocks(std::initializer_list<const char*> names) {
        for (const char* n : names) known_blocks_.insert(n);
    }

    [[noreturn]] void fail_at(const std::string& block, const std::string& key,
                              const std::string& message) {
        Entry* e = find(block, key);
        fail(file_.origin, e ? e->line : file_.block_lines.count(block)
                                             ? file_.block_lines.at(block)
                                             : 0,
             message);
    }

    const std::string& origin() const { return file_.origin; }

private:
    Entry* require(const std::string& block, const std::string& key) {
        Entry* e = find(block, key);
        if (!e) {
            int line = file_.block_lines.count(block) ? file_.block_lines.at(block) : 0;
            fail(file_.origin, line, "missing required key '" + key + "' in block '" + block + "'");
        }
        return e;
    }

    double to_number(const Entry& e, const std::string& key) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            fail(file_.origin, e.line, "key '" + key + "': not a number ('" + e.value + "')");
        }
    }

    std::vector<double> to_list(const Entry& e, const std::string& key) {
        const std::string& v = e.value;
        std::vector<double> out;
        if (v.rfind("logspace(", 0) == 0) {
            if (v.back() != ')') fail(file_.origin, e.line, "key '" + key + "': malformed logspace");
            double lo = 0, hi = 0;
            long n = 0;
            if (std::sscanf(v.c_str(), "logspace(%lf,%lf,%ld)", &lo, &hi, &n) != 3 &&
                std::sscanf(v.c_str(), "logspace(%lf, %lf, %ld)", &lo, &hi, &n) != 3) {
                fail(file_.origin, e.line, "key '" + key + "': expected logspace(lo, hi, n)");
            }
            if (!(lo > 0.0) || !(hi > lo) || n < 2) {
                fail(file_.origin, e.line, "key '" + key + "': logspace needs 0 < lo < hi, n >= 2");
            }
            for (long i = 0; i < n; ++i) {
                const double f = static_cast<double>(i) / static_cast<double>(n - 1);
                out.push_back(std::exp((1.0 - f) * std::log(lo) + f * std::log(hi)));
            }
            return out;
        }
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(file_.origin, e.line, "key '" + key + "': empty list element");
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                fail(file_.origin, e.line, "key '" + key + "': bad list element '" + item + "'");
            }
        }
        if (out.empty()) fail(file_.origin, e.line, "key '" + key + "': empty list");
        return out;
    }

    ParsedFile& file_;
    std::set<std::string> known_blocks_;
};

FadingDistribution parse_fading(Reader& reader) {
    const std::string kind = reader.word("fading", "kind");
    if (kind == "constant") {
        return FadingDistribution::constant(reader.number("fading", "value"));
    }
    if (kind == "rayleigh") {
        return FadingDistribution::rayleigh_power(reader.number_or("fading", "mean", 1.0));
    }
    if (kind == "lognormal") {
        return FadingDistribution::lognormal(reader.number_or("fading", "sigma_db", 8.0));
    }
    if (kind == "gamma") {
        return FadingDistribution::gamma(reader.number("fading", "shape"),
                                         reader.number("fading", "scale"));
    }
    if (kind == "pareto") {
        return FadingDistribution::pareto(reader.number("fading", "alpha"),
                                          reader.number_or("fading", "sigma", 1.0));
    }
    if (kind == "composite") {
        return FadingDistribution::composite_rayleigh_lognormal(
            reader.number_or("fading", "sigma_db", 8.0));
    }
    if (kind == "truncated") {
        const std::string base_kind = reader.word("fading", "base_kind");
        FadingDistribution base = FadingDistribution::constant(1.0);
        if (base_kind == "rayleigh") {
            base = FadingDistribution::rayleigh_power(reader.number_or("fading", "mean", 1.0));
        } else if (base_kind == "lognormal") {
            base = FadingDistribution::lognormal(reader.number_or("fading", "sigma_db", 8.0));
        } else if (base_kind == "gamma") {
            base = FadingDistribution::gamma(reader.number("fading", "shape"),
                                             reader.number("fading", "scale"));
        } else if (base_kind == "pareto") {
            base = FadingDistribution::pareto(reader.number("fading", "alpha"),
                                              reader.number_or("fading", "sigma", 1.0));
        } else if (base_kind == "composite") {
            base = FadingDistribution::composite_rayleigh_lognormal(
                reader.number_or("fading", "sigma_db", 8.0));
        } else if (base_kind == "constant") {
            base = FadingDistribution::constant(reader.number("fading", "value"));
        } else {
            reader.fail_at("fading", "base_kind", "unknown base fading kind '" + base_kind + "'");
        }
        return FadingDistribution::truncated(base, reader.number("fading", "cap"));
    }
    reader.fail_at("fading", "kind", "unknown fading kind '" + kind + "'");
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt17(v[i]);
    }
    return out;
}

}  // namespace

NetworkDomain ExperimentConfig::domain() const { return NetworkDomain(d, r_inf_m); }

PathLossModel ExperimentConfig::pathloss() const {
    return build_pathloss(a0, exponents, breakpoints_m, domain());
}

SimConfig ExperimentConfig::sim_config() const {
    SimConfig cfg{domain(), pathloss(), fading, noise_w, trials, seed, std::nullopt, workers};
    switch (truncation) {
        case TruncationPolicy::Off:
            break;
        case TruncationPolicy::Fixed:
            cfg.r_sim = r_sim_m;
            break;
        case TruncationPolicy::Auto: {
            const auto r = auto_truncation_radius(cfg.model, cfg.fading, cfg.domain);
            if (r && *r < cfg.domain.r_inf) {
                cfg.r_sim = *r;
            }
            break;
        }
    }
    cfg.validate();
    return cfg;
}

std::vector<double> ExperimentConfig::lambdas_per_m() const {
    std::vector<double> out;
    out.reserve(lambda_per_km2.size());
    for (double l : lambda_per_km2) {
        out.push_back(l * 1e-6);
    }
    return out;
}

ClassifyOptions ExperimentConfig::classify_options() const {
    ClassifyOptions opt;
    opt.epsilon = epsilon;
    opt.delta = delta;
    return opt;
}

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os << "domain {\n";
    os << "  d = " << d << "\n";
    os << "  r_inf_m = " << fmt17(r_inf_m) << "\n";
    os << "}\n";
    os << "pathloss {\n";
    os << "  a0 = " << fmt17(a0) << "\n";
    os << "  exponents = " << fmt_list(exponents) << "\n";
    if (!breakpoints_m.empty()) {
        os << "  breakpoints_m = " << fmt_list(breakpoints_m) << "\n";
    }
    os << "}\n";
    os << "fading {\n";
    switch (fading.kind()) {
        case FadingKind::Constant:
            os << "  kind = constant\n  value = " << fmt17(fading.param_a()) << "\n";
            break;
        case FadingKind::RayleighPower:
            os << "  kind = rayleigh\n  mean = " << fmt17(fading.param_a()) << "\n";
            break;
        case FadingKind::Lognormal:
            os << "  kind = lognormal\n  sigma_db = " << fmt17(fading.param_a()) << "\n";
            break;
        case FadingKind::Gamma:
            os << "  kind = gamma\n  shape = " << fmt17(fading.param_a())
               << "\n  scale = " << fmt17(fading.param_b()) << "\n";
            break;
        case FadingKind::Pareto:
            os << "  kind = pareto\n  alpha = " << fmt17(fading.param_a())
               << "\n  sigma = " << fmt17(fading.param_b()) << "\n";
            break;
        case FadingKind::CompositeRayleighLognormal:
            os << "  kind = composite\n  sigma_db = " << fmt17(fading.param_a()) << "\n";
            break;
        case FadingKind::Truncated: {
            const FadingDistribution* base = fading.base();
            os << "  kind = truncated\n";
            switch (base->kind()) {
                case FadingKind::Constant:
                    os << "  base_kind = constant\n  value = " << fmt17(base->param_a()) << "\n";
                    break;
                case FadingKind::RayleighPower:
                    os << "  base_kind = rayleigh\n  mean = " << fmt17(base->param_a()) << "\n";
                    break;
                case FadingKind::Lognormal:
                    os << "  base_kind = lognormal\n  sigma_db = " << fmt17(base->param_a())
                       << "\n";
                    break;
                case FadingKind::Gamma:
                    os << "  base_kind = gamma\n  shape = " << fmt17(base->param_a())
                       << "\n  scale = " << fmt17(base->param_b()) << "\n";
                    break;
                case FadingKind::Pareto:
                    os << "  base_kind = pareto\n  alpha = " << fmt17(base->param_a())
                       << "\n  sigma = " << fmt17(base->param_b()) << "\n";
                    break;
                case FadingKind::CompositeRayleighLognormal:
                    os << "  base_kind = composite\n  sigma_db = " << fmt17(base->param_a())
                       << "\n";
                    break;
                case FadingKind::Truncated:
                    break;
            }
            os << "  cap = " << fmt17(fading.upper_support()) << "\n";
            break;
        }
    }
    os << "}\n";
    os << "noise {\n  w = " << fmt17(noise_w) << "\n}\n";
    os << "simulation {\n";
    os << "  trials = " << trials << "\n";
    os << "  seed = " << seed << "\n";
    os << "  truncation = ";
    switch (truncation) {
        case TruncationPolicy::Auto: os << "auto"; break;
        case TruncationPolicy::Off: os << "off"; break;
        case TruncationPolicy::Fixed: os << fmt17(r_sim_m); break;
    }
    os << "\n";
    os << "  workers = " << workers << "\n";
    os << "}\n";
    os << "sweep {\n";
    os << "  lambda_per_km2 = " << fmt_list(lambda_per_km2) << "\n";
    os << "  y_grid = " << fmt_list(y_grid) << "\n";
    os << "  y_ref = " << fmt17(y_ref) << "\n";
    os << "  epsilon = " << fmt17(epsilon) << "\n";
    os << "  delta = " << fmt17(delta) << "\n";
    os << "}\n";
    return os.str();
}

std::string ExperimentConfig::fingerprint() const {
    // FNV-1a over the canonical echo.
    const std::string text = echo();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ParsedFile file = parse_blocks(text, origin);
    Reader reader(file);
    reader.expect_blocks({"domain", "pathloss", "fading", "noise", "simulation", "sweep"});

    ExperimentConfig cfg;
    cfg.d = static_cast<int>(reader.number("domain", "d"));
    if (reader.find("domain", "r_inf_m")) {
        cfg.r_inf_m = reader.number("domain", "r_inf_m");
    } else if (reader.find("domain", "r_inf_km")) {
        cfg.r_inf_m = reader.number("domain", "r_inf_km") * 1e3;
    } else {
        reader.fail_at("domain", "d", "domain needs r_inf_m or r_inf_km");
    }

    cfg.a0 = reader.number_or("pathloss", "a0", 1.0);
    cfg.exponents = reader.list("pathloss", "exponents");
    cfg.breakpoints_m = reader.list_or("pathloss", "breakpoints_m", {});
    cfg.fading = parse_fading(reader);
    cfg.noise_w = reader.number("noise", "w");

    cfg.trials = static_cast<int>(reader.number_or("simulation", "trials", 10000));
    const double seed_value = reader.number_or("simulation", "seed", 1);
    cfg.seed = static_cast<std::uint64_t>(seed_value);
    const std::string trunc = reader.word_or("simulation", "truncation", "auto");
    if (trunc == "auto") {
        cfg.truncation = TruncationPolicy::Auto;
    } else if (trunc == "off") {
        cfg.truncation = TruncationPolicy::Off;
    } else {
        cfg.truncation = TruncationPolicy::Fixed;
        try {
            cfg.r_sim_m = std::stod(trunc);
        } catch (const std::exception&) {
            reader.fail_at("simulation", "truncation",
                           "truncation must be auto, off, or a radius in meters");
        }
    }
    cfg.workers = static_cast<int>(reader.number_or("simulation", "workers", 0));

    cfg.lambda_per_km2 = reader.list_or("sweep", "lambda_per_km2", {});
    if (cfg.lambda_per_km2.empty()) {
        // default grid: 12 log-spaced points over 7 decades
        for (int i = 0; i < 12; ++i) {
            const double f = i / 11.0;
            cfg.lambda_per_km2.push_back(std::pow(10.0, -2.0 + 7.0 * f));
        }
    }
    cfg.y_grid = reader.list_or("sweep", "y_grid", {});
    if (cfg.y_grid.empty()) {
        for (int i = 0; i < 10; ++i) {
            const double f = i / 9.0;
            cfg.y_grid.push_back(std::pow(10.0, -3.0 + 4.0 * f));
        }
    }
    cfg.y_ref = reader.number_or("sweep", "y_ref", 1.0);
    cfg.epsilon = reader.number_or("sweep", "epsilon", 0.02);
    cfg.delta = reader.number_or("sweep", "delta", 0.05);

    reader.check_all_used();

    // Structural validation with config-level messages.
    (void)cfg.domain();
    (void)cfg.pathloss();
    if (cfg.trials < 1) {
        throw ValidationError(origin + ": simulation.trials must be at least 1");
    }
    if (!(cfg.noise_w >= 0.0)) {
        throw ValidationError(origin + ": noise.w must be non-negative");
    }
    if (!std::is_sorted(cfg.y_grid.begin(), cfg.y_grid.end()) || cfg.y_grid.front() <= 0.0) {
        throw ValidationError(origin + ": sweep.y_grid must be ascending and positive");
    }
    if (!std::is_sorted(cfg.lambda_per_km2.begin(), cfg.lambda_per_km2.end())) {
        throw ValidationError(origin + ": sweep.lambda_per_km2 must be ascending");
    }
    bool y_ref_on_grid = false;
    for (double y : cfg.y_grid) {
        if (std::abs(y - cfg.y_ref) <= 1e-9 * cfg.y_ref) y_ref_on_grid = true;
    }
    if (!y_ref_on_grid) {
        cfg.y_grid.push_back(cfg.y_ref);
        std::sort(cfg.y_grid.begin(), cfg.y_grid.end());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace udn
