#include "udn/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "udn/errors.hpp"

namespace udn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_model_domain(const PathLossModel& model, const NetworkDomain& domain) {
    if (model.d != domain.d) {
        throw ValidationError("path loss model was built for d = " + std::to_string(model.d) +
                              ", domain has d = " + std::to_string(domain.d));
    }
    if (model.breakpoints.back() != domain.r_inf) {
        throw ValidationError("path loss model outer breakpoint does not match the domain radius");
    }
}

}  // namespace

double analytic_tail_p(double t, const PathLossModel& model, const FadingDistribution& fading,
                       const NetworkDomain& domain) {
    if (!(t > 0.0)) {
        throw std::domain_error("threshold must be positive");
    }
    check_model_domain(model, domain);

    const int k_slopes = model.slope_count;
    const int k0 = model.exponents[0] > 0.0 ? 0 : 1;
    const double log_rd = domain.d * std::log(domain.r_inf);

    double tail = fading.ccdf(model.tail_coeff(k_slopes) * t);
    for (int k = k0; k < k_slopes; ++k) {
        const double alpha_k = model.alpha(k);
        const double lo = model.tail_coeff(k) * t;
        const double hi = model.tail_coeff(k + 1) * t;
        double moment;
        try {
            moment = fading.truncated_moment(alpha_k, lo, hi);
        } catch (const NumericError& e) {
            throw NumericError("slope " + std::to_string(k) + " term failed: " + e.what());
        }
        if (moment > 0.0) {
            tail += std::exp(std::log(moment) - alpha_k * (std::log(t) + model.log_amplitudes[k]) -
                             log_rd);
        }
    }

    if (tail < -1e-9 || tail > 1.0 + 1e-9) {
        throw NumericError("tail value " + std::to_string(tail) +
                           " escaped [0,1]; formula or quadrature bug");
    }
    return std::clamp(tail, 0.0, 1.0);
}

TailCurve analytic_tail_curve(const std::vector<double>& thresholds, const PathLossModel& model,
                              const FadingDistribution& fading, const NetworkDomain& domain) {
    TailCurve curve;
    curve.provenance = CurveProvenance::Analytic;
    curve.thresholds = thresholds;
    curve.ccdf.reserve(thresholds.size());
    for (double t : thresholds) {
        curve.ccdf.push_back(analytic_tail_p(t, model, fading, domain));
    }
    return curve;
}

TailTable::TailTable(const PathLossModel& model, const FadingDistribution& fading,
                     const NetworkDomain& domain, double t_lo, double t_hi,
                     int points_per_decade) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw ValidationError("tail table needs 0 < t_lo < t_hi");
    }
    const double decades = std::log10(t_hi / t_lo);
    const int n = std::max(4, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
    log_t_.resize(n);
    tail_.resize(n);
    const double log_lo = std::log(t_lo);
    const double step = (std::log(t_hi) - log_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        log_t_[i] = log_lo + i * step;
        tail_[i] = analytic_tail_p(std::exp(log_t_[i]), model, fading, domain);
    }
}

double TailTable::operator()(double t) const {
    const double lt = std::log(t);
    if (lt <= log_t_.front()) {
        return tail_.front();
    }
    if (lt >= log_t_.back()) {
        return tail_.back();
    }
    const auto it = std::upper_bound(log_t_.begin(), log_t_.end(), lt);
    const std::size_t i = static_cast<std::size_t>(it - log_t_.begin()) - 1;
    const double w = (lt - log_t_[i]) / (log_t_[i + 1] - log_t_[i]);
    const double lo = tail_[i], hi = tail_[i + 1];
    if (lo < 1e-300 || hi < 1e-300) {
        return lo + w * (hi - lo);
    }
    return std::exp((1.0 - w) * std::log(lo) + w * std::log(hi));
}

TailClass classify_received_power_from(const TailClass& fading_class,
                                       const PathLossModel& model) {
    const double alpha0 = model.alpha(0);  // +inf under a bounded near field
    if (fading_class.kind == TailKind::RegularlyVarying) {
        return TailClass::regularly_varying(std::min(alpha0, fading_class.index));
    }
    if (std::isfinite(alpha0)) {
        return TailClass::regularly_varying(alpha0);
    }
    // Bounded near field: the power tail is equivalent to the fading tail.
    return fading_class;
}

TailClass classify_received_power(const PathLossModel& model, const FadingDistribution& fading) {
    return classify_received_power_from(fading.tail_class(), model);
}

double asymptotic_tail_p(double t, const PathLossModel& model, const FadingDistribution& fading,
                         const NetworkDomain& domain) {
    if (!(t > 0.0)) {
        throw std::domain_error("threshold must be positive");
    }
    check_model_domain(model, domain);
    if (fading.kind() != FadingKind::Pareto) {
        throw UnsupportedCaseError("deep-tail closed form requires the Pareto fading kind");
    }
    const double alpha = fading.tail_class().index;
    const int k_slopes = model.slope_count;
    const bool bounded_near = model.exponents[0] == 0.0;
    const int k_first = bounded_near ? 1 : 0;
    for (int k = k_first; k < k_slopes; ++k) {
        if (model.alpha(k) == alpha) {
            throw UnsupportedCaseError("resonant case: fading index equals d/beta_" +
                                       std::to_string(k) + "; no closed-form constant");
        }
    }

    const double r_d = std::pow(domain.r_inf, static_cast<double>(domain.d));
    const double slowly_varying = std::pow(t, alpha) * fading.ccdf(t);
    const double alpha0 = model.alpha(0);

    // Sum of the per-slope coefficients whose terms decay like t^-alpha.
    const int k_sum_start = (bounded_near || alpha0 < alpha) ? 1 : 0;
    double coeff = std::pow(model.tail_coeff(k_slopes), -alpha);
    for (int k = k_sum_start; k < k_slopes; ++k) {
        const double alpha_k = model.alpha(k);
        const double lo = model.tail_coeff(k);
        const double hi = model.tail_coeff(k + 1);
        const double diff = std::pow(hi, alpha_k - alpha) - std::pow(lo, alpha_k - alpha);
        coeff += alpha * diff /
                 ((alpha_k - alpha) * std::exp(alpha_k * model.log_amplitudes[k]) * r_d);
    }

    double value = coeff * slowly_varying * std::pow(t, -alpha);
    if (!bounded_near && alpha0 < alpha) {
        // The near-field slope dominates: its term decays slower than t^-alpha.
        const double moment = fading.truncated_moment(alpha0, 0.0, kInf);
        value += moment * std::exp(-alpha0 * (std::log(t) + model.log_amplitudes[0])) / r_d;
    }
    return value;
}

HillEstimate hill_estimator(std::span<const double> samples, double k_fraction) {
    if (samples.size() < 1000) {
        throw ValidationError("tail index estimation needs at least 1000 samples (got " +
                              std::to_string(samples.size()) + ")");
    }
    if (!(k_fraction > 0.0) || k_fraction > 0.2) {
        throw ValidationError("k_fraction must lie in (0, 0.2]");
    }
    const std::size_t n = samples.size();
    const int k = std::max(2, static_cast<int>(k_fraction * static_cast<double>(n)));

    std::vector<double> top(samples.begin(), samples.end());
    std::nth_element(top.begin(), top.begin() + k, top.end(), std::greater<double>());
    const double threshold = top[k];  // (k+1)-th largest
    if (!(threshold > 0.0)) {
        throw ValidationError("tail index estimation needs positive samples");
    }

    double log_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        log_sum += std::log(top[i] / threshold);
    }
    HillEstimate est;
    est.k = k;
    if (log_sum <= 0.0) {
        est.alpha = kInf;  // all top values tied with the threshold
        est.std_error = 0.0;
        return est;
    }
    est.alpha = static_cast<double>(k) / log_sum;
    est.std_error = est.alpha / std::sqrt(static_cast<double>(k));
    return est;
}

TailCurve empirical_ccdf(std::span<const double> samples, const std::vector<double>& thresholds) {
    if (samples.empty()) {
        throw ValidationError("empirical CCDF needs at least one sample");
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw ValidationError("thresholds must be ascending");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    TailCurve curve;
    curve.provenance = CurveProvenance::Empirical;
    curve.thresholds = thresholds;
    curve.ccdf.reserve(thresholds.size());
    const double n = static_cast<double>(sorted.size());
    for (double t : thresholds) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.ccdf.push_back(static_cast<double>(above) / n);
    }
    return curve;
}

double sample_received_power(const PathLossEvaluator& loss, const FadingDistribution& fading,
                             const NetworkDomain& domain, RandomStream& rng) {
    const double u = rng.next_uniform();
    double r;
    if (domain.d == 1) {
        r = domain.r_inf * u;
    } else if (domain.d == 2) {
        r = domain.r_inf * std::sqrt(u);
    } else {
        r = domain.r_inf * std::cbrt(u);
    }
    return fading.sample(rng) / loss(r);
}

std::vector<double> sample_received_power_batch(const PathLossModel& model,
                                                const FadingDistribution& fading,
                                                const NetworkDomain& domain, std::size_t count,
                                                std::uint64_t seed, int workers) {
    check_model_domain(model, domain);
    const PathLossEvaluator loss(model);
    std::vector<double> powers(count);
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        RandomStream rng(seed, rng_tag::kPowerSample, 0, static_cast<std::uint64_t>(i));
        powers[static_cast<std::size_t>(i)] = sample_received_power(loss, fading, domain, rng);
    }
    return powers;
}

}  // namespace udn
