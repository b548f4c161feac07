#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "udn/fading.hpp"
#include "udn/geometry.hpp"
#include "udn/pathloss.hpp"
#include "udn/tail_class.hpp"

namespace udn {

enum class CurveProvenance { Analytic, Empirical, Asymptotic };

struct TailCurve {
    std::vector<double> thresholds;
    std::vector<double> ccdf;
    CurveProvenance provenance = CurveProvenance::Empirical;
};

// CCDF of the power received from one random node: a fading-tail term at the
// far boundary plus one truncated-moment term per path loss slope. Exact up
// to quadrature accuracy; the result must land in [0,1] and a violation
// beyond rounding noise raises NumericError.
double analytic_tail_p(double t, const PathLossModel& model, const FadingDistribution& fading,
                       const NetworkDomain& domain);

TailCurve analytic_tail_curve(const std::vector<double>& thresholds, const PathLossModel& model,
                              const FadingDistribution& fading, const NetworkDomain& domain);

// Log-log interpolation table over analytic_tail_p, for bulk evaluation
// (e.g. goodness-of-fit over 1e6 sample points). Reproduces the exact
// values to ~1e-5 relative accuracy inside its build range.
class TailTable {
public:
    TailTable(const PathLossModel& model, const FadingDistribution& fading,
              const NetworkDomain& domain, double t_lo, double t_hi, int points_per_decade = 160);
    double operator()(double t) const;
    double t_lo() const { return std::exp(log_t_.front()); }
    double t_hi() const { return std::exp(log_t_.back()); }

private:
    std::vector<double> log_t_;
    std::vector<double> tail_;
};

// Tail class of the received power given the declared fading class: a
// regularly varying fading keeps the smaller of its index and d/beta_0;
// lighter fading inherits d/beta_0 under a singular near field and its own
// class under a bounded one.
TailClass classify_received_power_from(const TailClass& fading_class, const PathLossModel& model);
TailClass classify_received_power(const PathLossModel& model, const FadingDistribution& fading);

// Deep-tail closed form for Pareto fading, by Karamata-style integration of
// each slope term. Three branches on (beta_0, d/beta_0 vs alpha). The
// resonant case alpha == d/beta_k is not covered and raises
// UnsupportedCaseError.
double asymptotic_tail_p(double t, const PathLossModel& model, const FadingDistribution& fading,
                         const NetworkDomain& domain);

struct HillEstimate {
    double alpha = 0.0;      // +inf signals degenerate (tied) spacings
    double std_error = 0.0;  // alpha / sqrt(k)
    int k = 0;               // order statistics used
};

// Classical Hill estimate over the top floor(k_fraction * n) order
// statistics. Requires at least 1000 samples and k_fraction in (0, 0.2].
HillEstimate hill_estimator(std::span<const double> samples, double k_fraction);

// Empirical CCDF with the strict ">" convention; thresholds must be
// ascending, samples non-empty.
TailCurve empirical_ccdf(std::span<const double> samples, const std::vector<double>& thresholds);

// One draw of the single-node received power m / l(r).
double sample_received_power(const PathLossEvaluator& loss, const FadingDistribution& fading,
                             const NetworkDomain& domain, RandomStream& rng);

// Batch of independent single-node powers on counter-indexed substreams;
// the result is identical for any worker count.
std::vector<double> sample_received_power_batch(const PathLossModel& model,
                                                const FadingDistribution& fading,
                                                const NetworkDomain& domain, std::size_t count,
                                                std::uint64_t seed, int workers = 0);

}  // namespace udn
