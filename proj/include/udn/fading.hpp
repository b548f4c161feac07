#pragma once

#include <memory>
#include <optional>
#include <string>

#include "udn/rng.hpp"
#include "udn/tail_class.hpp"

namespace udn {

enum class FadingKind {
    Constant,
    RayleighPower,  // exponential power with the given mean
    Lognormal,      // median-1 power, spread given in dB
    Gamma,
    Pareto,         // CCDF (1 + x/sigma)^-alpha
    CompositeRayleighLognormal,
    Truncated,
};

// One fading law: the lumped per-node power multiplier covering transmit
// power, fast fading, shadowing and antenna gains. Immutable after
// construction and safe to share across threads; sampling draws from a
// caller-supplied stream.
class FadingDistribution {
public:
    static FadingDistribution constant(double value);
    static FadingDistribution rayleigh_power(double mean_power);
    static FadingDistribution lognormal(double sigma_db);
    static FadingDistribution gamma(double shape, double scale);
    static FadingDistribution pareto(double alpha, double sigma = 1.0);
    static FadingDistribution composite_rayleigh_lognormal(double sigma_db = 8.0);
    static FadingDistribution truncated(const FadingDistribution& base, double cap);

    FadingKind kind() const { return kind_; }
    const TailClass& tail_class() const { return tail_class_; }

    double sample(RandomStream& rng) const;

    // Pr(m > x), strict inequality.
    double ccdf(double x) const;

    // Probability density; throws UnsupportedCaseError for the atomic
    // Constant kind.
    double density(double x) const;

    // E(m); +infinity when the mean diverges (Pareto with alpha <= 1).
    double mean() const;

    // E(m^p * 1(lo <= m < hi)); hi may be +infinity. Closed forms for
    // Constant and Pareto, otherwise adaptive quadrature against density().
    // Throws DivergenceError when the moment is infinite.
    double truncated_moment(double p, double lo, double hi) const;

    // Right end of the support: the cap for Truncated, +infinity otherwise.
    double upper_support() const;

    // Canonical text form, e.g. "pareto(alpha=4, sigma=1)".
    std::string describe() const;

    // Parameter access for config echo.
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    const FadingDistribution* base() const { return base_.get(); }

private:
    FadingDistribution() = default;

    FadingKind kind_ = FadingKind::Constant;
    TailClass tail_class_;
    double a_ = 1.0;  // value | mean | sigma_db | shape | alpha | sigma_db
    double b_ = 0.0;  // - | - | - | scale | sigma | -
    double sigma_log_ = 0.0;  // ln-scale spread for the lognormal kinds
    std::shared_ptr<const FadingDistribution> base_;  // Truncated only
    double cap_ = 0.0;
    double base_keep_ = 1.0;  // Pr(base <= cap)

    double scale_hint() const;  // typical magnitude, cheap and closed form
    double density_quadrature_moment(double p, double lo, double hi) const;
};

}  // namespace udn
