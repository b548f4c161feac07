#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "udn/fading.hpp"
#include "udn/geometry.hpp"
#include "udn/pathloss.hpp"

namespace udn {

struct SimConfig {
    NetworkDomain domain{2, 1.0};
    PathLossModel model;
    FadingDistribution fading = FadingDistribution::constant(1.0);
    double noise_w = 0.0;              // same scale as received power
    int trials = 1;
    std::uint64_t seed = 1;
    std::optional<double> r_sim;       // far-field truncation radius in meters
    int workers = 0;                   // 0 = runtime default thread count

    void validate() const;
};

// One network draw under strongest-cell association. The interference total
// includes the serving node, and the SINR divides the peak power by
// (I + W - M). An empty network carries SINR 0; a lone node with W = 0
// carries the +inf sentinel.
struct RealizationResult {
    double max_power = 0.0;     // M
    double interference = 0.0;  // I, sum over all nodes
    double sinr = 0.0;          // Y
    std::uint64_t n_nodes = 0;
};

// Deterministic in (seed, point_index, stream_index) alone: scheduling
// order can never change the draw.
RealizationResult simulate_realization(const SimConfig& cfg, double lambda,
                                       std::uint64_t stream_index, std::uint64_t point_index = 0);

// SINR values for cfg.trials independent realizations. The OpenMP variant
// distributes realizations over threads and fills a preallocated slot per
// realization, so its output is bit-identical to the serial reference for
// every worker count.
std::vector<double> simulate_batch(const SimConfig& cfg, double lambda,
                                   std::uint64_t point_index = 0);
std::vector<double> simulate_batch_serial(const SimConfig& cfg, double lambda,
                                          std::uint64_t point_index = 0);

struct CoverageCurve {
    std::vector<double> y_grid;
    std::vector<double> p_hat;
    std::vector<double> ci_halfwidth;  // 95% normal half-widths
    double lambda = 0.0;               // per m^d
    int trials = 0;
    std::uint64_t seed = 0;
};

struct CapacityEstimate {
    double c_hat = 0.0;    // nats/s/Hz, mean over realizations with finite SINR
    double std_err = 0.0;
    double lambda = 0.0;
    int trials = 0;
    bool diverged = false;              // an infinite-SINR sentinel was hit
    std::uint64_t diverged_count = 0;
};

// Estimators over a shared realization batch (common random numbers across
// thresholds by construction).
CoverageCurve coverage_from_samples(std::span<const double> sinr_values,
                                    const std::vector<double>& y_grid, double lambda,
                                    std::uint64_t seed);
CapacityEstimate capacity_from_samples(std::span<const double> sinr_values, double lambda);

CoverageCurve estimate_coverage(const SimConfig& cfg, double lambda,
                                const std::vector<double>& y_grid,
                                std::uint64_t point_index = 0);
CapacityEstimate estimate_capacity(const SimConfig& cfg, double lambda,
                                   std::uint64_t point_index = 0);

// Exact 95% binomial interval (Clopper-Pearson), for p_hat near 0 or 1
// where the normal approximation is poor.
std::pair<double, double> clopper_pearson(std::uint64_t successes, std::uint64_t trials);

}  // namespace udn
