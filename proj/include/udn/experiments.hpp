#pragma once

#include <optional>
#include <string>
#include <vector>

#include "udn/sinr.hpp"
#include "udn/tail.hpp"

namespace udn {

// How coverage and capacity behave as the density grows without bound:
// keep climbing, level off, or peak at a finite density and fall to zero.
enum class Regime { Growth, Saturation, InverseU, Unclassified };

std::string to_string(Regime regime);

// Regime implied by the tail class of the single-node received power.
// The boundary index 1 separates the cases and is itself undecidable;
// it raises UnsupportedCaseError.
Regime regime_from_power_class(const TailClass& power_tail);

// Composes the power-tail classification with the regime map, then
// cross-checks the result against the (near-field exponent vs dimension,
// fading class) table.
Regime predict_regime(const PathLossModel& model, const FadingDistribution& fading,
                      const NetworkDomain& domain);

struct SweepPoint {
    double lambda = 0.0;  // per m^d
    CoverageCurve coverage;
    CapacityEstimate capacity;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<double> lambdas;   // per m^d, ascending
    std::vector<double> y_refs;
    std::vector<SweepPoint> points;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string config_fingerprint;
};

// Coverage and capacity across a log-spaced density grid. Requires at
// least 8 points spanning at least 4 decades. Per-point failures are
// recorded on the point and the sweep continues.
SweepResult run_sweep(const SimConfig& cfg, const std::vector<double>& lambdas,
                      const std::vector<double>& y_refs, std::string config_fingerprint = "");

struct ClassifyOptions {
    double epsilon = 0.02;     // closeness to full coverage for Growth
    double delta = 0.05;       // plateau ratio tolerance for Saturation
    double peak_sigmas = 3.0;  // peak separation rule for InverseU
    double floor = 0.05;       // "bounded away from zero" level
};

struct ObservedClassification {
    Regime regime = Regime::Unclassified;
    double u_ratio = 0.0;  // coverage ratio across the top decade
    std::string diagnostics;
};

// Decision rules over the sweep data at one reference threshold.
ObservedClassification classify_observed(const SweepResult& sweep, double y_ref,
                                         const ClassifyOptions& opt = {});

struct DensityBracket {
    double lambda = 0.0;  // per m^d
    double lo = 0.0;
    double hi = 0.0;
};

struct OptimalDensities {
    DensityBracket coverage;  // argmax of coverage at y_ref
    DensityBracket capacity;  // argmax of capacity
};

struct OptimizeOptions {
    int max_iterations = 12;
    int probe_trials = 0;        // 0 = sweep trials
    double bracket_log10 = 0.25; // stop once the bracket is this narrow
};

// Refines the grid argmax by golden-section search on the simulator, with
// fresh seeds per probe and majority-of-3 comparisons against noise.
// Requires an observed inverse-U regime.
OptimalDensities find_optimal_density(const SweepResult& sweep, const SimConfig& cfg,
                                      double y_ref, const OptimizeOptions& opt = {});

// Smallest truncation radius whose excluded far field contributes less
// than 1e-3 of the retained mean interference. Returns nullopt when the
// fading mean diverges (no sound bound exists; simulate the full domain).
std::optional<double> auto_truncation_radius(const PathLossModel& model,
                                             const FadingDistribution& fading,
                                             const NetworkDomain& domain);

struct RegimeReport {
    Regime predicted = Regime::Unclassified;
    Regime observed = Regime::Unclassified;
    double y_ref = 0.0;
    double u_ratio = 0.0;
    std::optional<OptimalDensities> optima;
    std::string diagnostics;
    std::string config_fingerprint;
};

// Flat key = value text block, deterministic byte output.
std::string format_regime_report(const RegimeReport& report);

}  // namespace udn
