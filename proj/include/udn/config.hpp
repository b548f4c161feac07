#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "udn/experiments.hpp"
#include "udn/fading.hpp"
#include "udn/geometry.hpp"
#include "udn/pathloss.hpp"
#include "udn/sinr.hpp"

namespace udn {

enum class TruncationPolicy { Auto, Off, Fixed };

// Everything one experiment needs, as read from the block-structured config
// text. Lengths are stored in meters and densities per m^2-equivalents;
// the file format accepts km-based units and converts on load.
struct ExperimentConfig {
    // domain
    int d = 2;
    double r_inf_m = 0.0;
    // path loss
    double a0 = 1.0;
    std::vector<double> exponents;
    std::vector<double> breakpoints_m;  // interior breakpoints R_1..R_{K-1}
    // fading
    FadingDistribution fading = FadingDistribution::constant(1.0);
    // noise
    double noise_w = 0.0;
    // simulation
    int trials = 10000;
    std::uint64_t seed = 1;
    TruncationPolicy truncation = TruncationPolicy::Auto;
    double r_sim_m = 0.0;  // Fixed policy only
    int workers = 0;
    // sweep
    std::vector<double> lambda_per_km2;
    std::vector<double> y_grid;
    double y_ref = 1.0;
    double epsilon = 0.02;
    double delta = 0.05;

    NetworkDomain domain() const;
    PathLossModel pathloss() const;
    // Resolves the truncation policy (running the auto rule if selected)
    // and assembles the engine configuration.
    SimConfig sim_config() const;
    std::vector<double> lambdas_per_m() const;  // sweep grid in per-m^d
    ClassifyOptions classify_options() const;

    // Canonical text form; parsing it reproduces this config exactly.
    std::string echo() const;
    std::string fingerprint() const;  // 64-bit hash of echo(), hex
};

// Parses and fully validates; error messages carry <origin>:<line>.
ExperimentConfig parse_config(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

// Built-in experiment presets.
ExperimentConfig load_preset(const std::string& name);
std::vector<std::string> preset_names();
const std::string& preset_text(const std::string& name);

}  // namespace udn
