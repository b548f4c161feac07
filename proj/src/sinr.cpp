#include "udn/sinr.hpp"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "udn/errors.hpp"

namespace udn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;

}  // namespace

void SimConfig::validate() const {
    if (trials < 1) {
        throw ValidationError("trials must be at least 1");
    }
    if (!(noise_w >= 0.0) || !std::isfinite(noise_w)) {
        throw ValidationError("noise power must be finite and non-negative");
    }
    if (model.d != domain.d || model.breakpoints.back() != domain.r_inf) {
        throw ValidationError("path loss model does not match the domain");
    }
    if (r_sim) {
        if (!(*r_sim > 0.0) || *r_sim > domain.r_inf) {
            throw ValidationError("truncation radius must lie in (0, r_inf]");
        }
        if (model.slope_count > 1 && *r_sim <= model.breakpoints[1]) {
            throw ValidationError("truncation radius must exceed the first breakpoint");
        }
    }
}

RealizationResult simulate_realization(const SimConfig& cfg, double lambda,
                                       std::uint64_t stream_index, std::uint64_t point_index) {
    const PathLossEvaluator loss(cfg.model);
    RandomStream rng(cfg.seed, rng_tag::kSinr, point_index, stream_index);
    const double radius = cfg.r_sim.value_or(cfg.domain.r_inf);

    RealizationResult out;
    double max_power = 0.0;
    double rest = 0.0;  // interference excluding the running maximum
    const DensityConfig density(lambda);
    out.n_nodes = for_each_distance(density, cfg.domain, radius, rng, [&](double r) {
        const double p = cfg.fading.sample(rng) / loss(r);
        if (p > max_power) {
            rest += max_power;
            max_power = p;
        } else {
            rest += p;
        }
    });

    out.max_power = max_power;
    out.interference = max_power + rest;
    if (out.n_nodes == 0) {
        out.sinr = 0.0;
    } else {
        const double denom = rest + cfg.noise_w;
        out.sinr = denom > 0.0 ? max_power / denom : kInf;
    }
    return out;
}

std::vector<double> simulate_batch_serial(const SimConfig& cfg, double lambda,
                                          std::uint64_t point_index) {
    cfg.validate();
    std::vector<double> sinr(cfg.trials);
    for (int i = 0; i < cfg.trials; ++i) {
        sinr[i] = simulate_realization(cfg, lambda, static_cast<std::uint64_t>(i), point_index).sinr;
    }
    return sinr;
}

std::vector<double> simulate_batch(const SimConfig& cfg, double lambda,
                                   std::uint64_t point_index) {
    cfg.validate();
    std::vector<double> sinr(cfg.trials);
#ifdef _OPENMP
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int i = 0; i < cfg.trials; ++i) {
        try {
            sinr[i] =
                simulate_realization(cfg, lambda, static_cast<std::uint64_t>(i), point_index).sinr;
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
            sinr[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (failed) {
        throw NumericError("realization failed: " + failure);
    }
    return sinr;
#else
    return simulate_batch_serial(cfg, lambda, point_index);
#endif
}

CoverageCurve coverage_from_samples(std::span<const double> sinr_values,
                                    const std::vector<double>& y_grid, double lambda,
                                    std::uint64_t seed) {
    if (y_grid.empty() || !std::is_sorted(y_grid.begin(), y_grid.end())) {
        throw ValidationError("threshold grid must be non-empty and ascending");
    }
    for (double y : y_grid) {
        if (!(y > 0.0)) {
            throw ValidationError("coverage thresholds must be positive");
        }
    }
    const std::size_t n_y = y_grid.size();
    // Bin each realization by the largest threshold it still covers, then
    // suffix-sum; coverage is exactly monotone in y this way.
    std::vector<std::uint64_t> bins(n_y + 1, 0);
    for (double y_val : sinr_values) {
        const auto it = std::upper_bound(y_grid.begin(), y_grid.end(), y_val);
        bins[static_cast<std::size_t>(it - y_grid.begin())]++;
    }
    CoverageCurve curve;
    curve.y_grid = y_grid;
    curve.lambda = lambda;
    curve.trials = static_cast<int>(sinr_values.size());
    curve.seed = seed;
    curve.p_hat.resize(n_y);
    curve.ci_halfwidth.resize(n_y);
    const double n = static_cast<double>(sinr_values.size());
    std::uint64_t at_least = 0;
    for (std::size_t j = n_y; j-- > 0;) {
        at_least += bins[j + 1];
        const double p = static_cast<double>(at_least) / n;
        curve.p_hat[j] = p;
        curve.ci_halfwidth[j] = kZ95 * std::sqrt(p * (1.0 - p) / n);
    }
    return curve;
}

CapacityEstimate capacity_from_samples(std::span<const double> sinr_values, double lambda) {
    CapacityEstimate est;
    est.lambda = lambda;
    est.trials = static_cast<int>(sinr_values.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t finite = 0;
    for (double y : sinr_values) {
        if (std::isinf(y)) {
            est.diverged = true;
            est.diverged_count++;
            continue;
        }
        const double rate = std::log1p(y);
        sum += rate;
        sum_sq += rate * rate;
        ++finite;
    }
    if (finite > 0) {
        const double n = static_cast<double>(finite);
        est.c_hat = sum / n;
        const double var = std::max(0.0, sum_sq / n - est.c_hat * est.c_hat);
        est.std_err = std::sqrt(var / n);
    }
    return est;
}

CoverageCurve estimate_coverage(const SimConfig& cfg, double lambda,
                                const std::vector<double>& y_grid, std::uint64_t point_index) {
    const std::vector<double> sinr = simulate_batch(cfg, lambda, point_index);
    return coverage_from_samples(sinr, y_grid, lambda, cfg.seed);
}

CapacityEstimate estimate_capacity(const SimConfig& cfg, double lambda,
                                   std::uint64_t point_index) {
    const std::vector<double> sinr = simulate_batch(cfg, lambda, point_index);
    return capacity_from_samples(sinr, lambda);
}

std::pair<double, double> clopper_pearson(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0 || successes > trials) {
        throw ValidationError("invalid binomial counts");
    }
    const double a = 0.025;
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    double lo = 0.0, hi = 1.0;
    if (successes > 0) {
        lo = boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), a);
    }
    if (successes < trials) {
        hi = boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, n - k), 1.0 - a);
    }
    return {lo, hi};
}

}  // namespace udn
