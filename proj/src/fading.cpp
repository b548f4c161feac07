#include "udn/fading.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "udn/errors.hpp"
#include "udn/quadrature.hpp"

namespace udn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn10Over10 = 0.23025850929940457;  // dB -> ln-power scale
constexpr double kInvSqrt2Pi = 0.3989422804014327;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string("fading parameter ") + name +
                              " must be positive and finite (got " + fmt(v) + ")");
    }
}

// gamma_lower(a, x) saturates at tgamma(a) quickly; skip the special
// function once x is far past the transition to avoid overflow corner
// cases at extreme arguments.
double gamma_lower_clamped(double a, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (std::isinf(x) || x > a + 60.0 + 10.0 * std::sqrt(a)) {
        return boost::math::tgamma(a);
    }
    return boost::math::tgamma_lower(a, x);
}

double pareto_ccdf(double x, double alpha, double sigma) {
    return std::pow(1.0 + x / sigma, -alpha);
}

}  // namespace

std::string to_string(const TailClass& tc) {
    switch (tc.kind) {
        case TailKind::RegularlyVarying: return "regularly_varying(" + fmt(tc.index) + ")";
        case TailKind::RapidlyVarying: return "rapidly_varying";
        case TailKind::LighterThanRapid: return "lighter_than_rapid[" + tc.envelope + "]";
    }
    return "?";
}

TailClass TailClass::regularly_varying(double idx) {
    if (!(idx >= 0.0) || !std::isfinite(idx)) {
        throw ValidationError("regular-variation index must be finite and non-negative");
    }
    return TailClass{TailKind::RegularlyVarying, idx, ""};
}

TailClass TailClass::rapidly_varying() { return TailClass{TailKind::RapidlyVarying, 0.0, ""}; }

TailClass TailClass::lighter_than_rapid(std::string envelope_name) {
    return TailClass{TailKind::LighterThanRapid, 0.0, std::move(envelope_name)};
}

FadingDistribution FadingDistribution::constant(double value) {
    require_positive(value, "value");
    FadingDistribution f;
    f.kind_ = FadingKind::Constant;
    f.a_ = value;
    f.tail_class_ = TailClass::lighter_than_rapid("point mass");
    return f;
}

FadingDistribution FadingDistribution::rayleigh_power(double mean_power) {
    require_positive(mean_power, "mean");
    FadingDistribution f;
    f.kind_ = FadingKind::RayleighPower;
    f.a_ = mean_power;
    f.tail_class_ = TailClass::rapidly_varying();
    return f;
}

FadingDistribution FadingDistribution::lognormal(double sigma_db) {
    require_positive(sigma_db, "sigma_db");
    FadingDistribution f;
    f.kind_ = FadingKind::Lognormal;
    f.a_ = sigma_db;
    f.sigma_log_ = sigma_db * kLn10Over10;
    f.tail_class_ = TailClass::rapidly_varying();
    return f;
}

FadingDistribution FadingDistribution::gamma(double shape, double scale) {
    require_positive(shape, "shape");
    require_positive(scale, "scale");
    FadingDistribution f;
    f.kind_ = FadingKind::Gamma;
    f.a_ = shape;
    f.b_ = scale;
    f.tail_class_ = TailClass::rapidly_varying();
    return f;
}

FadingDistribution FadingDistribution::pareto(double alpha, double sigma) {
    require_positive(alpha, "alpha");
    require_positive(sigma, "sigma");
    FadingDistribution f;
    f.kind_ = FadingKind::Pareto;
    f.a_ = alpha;
    f.b_ = sigma;
    f.tail_class_ = TailClass::regularly_varying(alpha);
    return f;
}

FadingDistribution FadingDistribution::composite_rayleigh_lognormal(double sigma_db) {
    require_positive(sigma_db, "sigma_db");
    FadingDistribution f;
    f.kind_ = FadingKind::CompositeRayleighLognormal;
    f.a_ = sigma_db;
    f.sigma_log_ = sigma_db * kLn10Over10;
    f.tail_class_ = TailClass::rapidly_varying();
    return f;
}

FadingDistribution FadingDistribution::truncated(const FadingDistribution& base, double cap) {
    require_positive(cap, "cap");
    if (base.kind_ == FadingKind::Truncated) {
        throw ValidationError("nested truncation is not supported");
    }
    FadingDistribution f;
    f.kind_ = FadingKind::Truncated;
    f.base_ = std::make_shared<FadingDistribution>(base);
    f.cap_ = cap;
    f.base_keep_ = 1.0 - base.ccdf(cap);
    if (f.base_keep_ < 0.01) {
        throw ValidationError("truncation cap " + fmt(cap) + " keeps only " +
                              fmt(f.base_keep_) + " of the base mass; raise the cap");
    }
    f.tail_class_ = TailClass::lighter_than_rapid("exponential");
    return f;
}

double FadingDistribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case FadingKind::Constant:
            return a_;
        case FadingKind::RayleighPower:
            return a_ * rng.next_exponential();
        case FadingKind::Lognormal:
            return std::exp(sigma_log_ * rng.next_normal());
        case FadingKind::Gamma: {
            // Marsaglia-Tsang; the shape < 1 case boosts and corrects.
            double shape = a_;
            double boost_factor = 1.0;
            if (shape < 1.0) {
                boost_factor = std::pow(rng.next_uniform(), 1.0 / shape);
                shape += 1.0;
            }
            const double d = shape - 1.0 / 3.0;
            const double c = 1.0 / std::sqrt(9.0 * d);
            for (;;) {
                double x, v;
                do {
                    x = rng.next_normal();
                    v = 1.0 + c * x;
                } while (v <= 0.0);
                v = v * v * v;
                const double u = rng.next_uniform();
                if (u < 1.0 - 0.0331 * x * x * x * x) {
                    return b_ * d * v * boost_factor;
                }
                if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                    return b_ * d * v * boost_factor;
                }
            }
        }
        case FadingKind::Pareto: {
            const double u = rng.next_uniform();
            const double alpha = a_;
            if (alpha == 0.5) {
                const double t = 1.0 / u;
                return b_ * (t * t - 1.0);
            }
            if (alpha == 1.0) {
                return b_ * (1.0 / u - 1.0);
            }
            if (alpha == 2.0) {
                return b_ * (1.0 / std::sqrt(u) - 1.0);
            }
            if (alpha == 4.0) {
                return b_ * (1.0 / std::sqrt(std::sqrt(u)) - 1.0);
            }
            return b_ * std::expm1(-std::log(u) / alpha);
        }
        case FadingKind::CompositeRayleighLognormal:
            return rng.next_exponential() * std::exp(sigma_log_ * rng.next_normal());
        case FadingKind::Truncated: {
            for (;;) {
                const double x = base_->sample(rng);
                if (x <= cap_) {
                    return x;
                }
            }
        }
    }
    throw NumericError("unreachable fading kind");
}

double FadingDistribution::ccdf(double x) const {
    if (x < 0.0) {
        return 1.0;
    }
    switch (kind_) {
        case FadingKind::Constant:
            return x < a_ ? 1.0 : 0.0;
        case FadingKind::RayleighPower:
            return std::exp(-x / a_);
        case FadingKind::Lognormal:
            if (x == 0.0) return 1.0;
            return 0.5 * std::erfc(std::log(x) / (sigma_log_ * M_SQRT2));
        case FadingKind::Gamma:
            return boost::math::gamma_q(a_, x / b_);
        case FadingKind::Pareto:
            return pareto_ccdf(x, a_, b_);
        case FadingKind::CompositeRayleighLognormal: {
            if (x == 0.0) return 1.0;
            // Pr(E * S > x) = E_z[ exp(-x / S(z)) ], S = exp(sigma z).
            const double sig = sigma_log_;
            const double z_star = std::log(x) / sig;
            std::vector<double> breaks;
            if (z_star > -14.0 && z_star < 14.0) breaks.push_back(z_star);
            breaks.push_back(0.0);
            auto integrand = [&](double z) {
                return normal_pdf(z) * std::exp(-x * std::exp(-sig * z));
            };
            QuadratureOptions opt;
            opt.rel_tol = 1e-11;
            opt.abs_tol = 1e-300;
            return integrate(integrand, -14.0, 14.0, opt, breaks).value;
        }
        case FadingKind::Truncated: {
            if (x >= cap_) return 0.0;
            return (base_->ccdf(x) - base_->ccdf(cap_)) / base_keep_;
        }
    }
    throw NumericError("unreachable fading kind");
}

double FadingDistribution::density(double x) const {
    if (x < 0.0) {
        return 0.0;
    }
    switch (kind_) {
        case FadingKind::Constant:
            throw UnsupportedCaseError("atomic distribution: the constant kind has no density");
        case FadingKind::RayleighPower:
            return std::exp(-x / a_) / a_;
        case FadingKind::Lognormal: {
            if (x == 0.0) return 0.0;
            const double z = std::log(x) / sigma_log_;
            return normal_pdf(z) / (x * sigma_log_);
        }
        case FadingKind::Gamma: {
            const double shape = a_, scale = b_;
            if (x == 0.0) {
                if (shape > 1.0) return 0.0;
                if (shape == 1.0) return 1.0 / scale;
                return kInf;
            }
            return std::exp((shape - 1.0) * std::log(x) - x / scale -
                            std::lgamma(shape) - shape * std::log(scale));
        }
        case FadingKind::Pareto:
            return (a_ / b_) * std::pow(1.0 + x / b_, -a_ - 1.0);
        case FadingKind::CompositeRayleighLognormal: {
            // f(x) = E_z[ exp(-x/S) / S ], S = exp(sigma z).
            const double sig = sigma_log_;
            std::vector<double> breaks{0.0, -sig};
            if (x > 0.0) {
                const double z_star = std::log(x) / sig;
                if (z_star > -15.0 && z_star < 15.0) breaks.push_back(z_star);
            }
            auto integrand = [&](double z) {
                const double inv_s = std::exp(-sig * z);
                return normal_pdf(z) * inv_s * std::exp(-x * inv_s);
            };
            QuadratureOptions opt;
            opt.rel_tol = 1e-11;
            opt.abs_tol = 1e-300;
            return integrate(integrand, -16.0, 16.0, opt, breaks).value;
        }
        case FadingKind::Truncated: {
            if (x > cap_) return 0.0;
            return base_->density(x) / base_keep_;
        }
    }
    throw NumericError("unreachable fading kind");
}

double FadingDistribution::mean() const {
    switch (kind_) {
        case FadingKind::Constant: return a_;
        case FadingKind::RayleighPower: return a_;
        case FadingKind::Lognormal: return std::exp(0.5 * sigma_log_ * sigma_log_);
        case FadingKind::Gamma: return a_ * b_;
        case FadingKind::Pareto: return a_ > 1.0 ? b_ / (a_ - 1.0) : kInf;
        case FadingKind::CompositeRayleighLognormal:
            return std::exp(0.5 * sigma_log_ * sigma_log_);
        case FadingKind::Truncated: return truncated_moment(1.0, 0.0, kInf);
    }
    throw NumericError("unreachable fading kind");
}

double FadingDistribution::upper_support() const {
    return kind_ == FadingKind::Truncated ? cap_ : kInf;
}

double FadingDistribution::truncated_moment(double p, double lo, double hi) const {
    if (!(p >= 0.0)) {
        throw ValidationError("moment order must be non-negative");
    }
    if (!(lo >= 0.0) || !(hi >= lo)) {
        throw ValidationError("moment bounds must satisfy 0 <= lo <= hi");
    }
    if (lo == hi) {
        return 0.0;
    }

    switch (kind_) {
        case FadingKind::Constant:
            return (lo <= a_ && a_ < hi) ? std::pow(a_, p) : 0.0;
        case FadingKind::Pareto: {
            const double alpha = a_, sigma = b_;
            if (p >= alpha && std::isinf(hi)) {
                throw DivergenceError("moment of order " + fmt(p) +
                                      " diverges for a tail of index " + fmt(alpha));
            }
            if (p < alpha) {
                // sigma^p * alpha * Int (1-u)^p u^(alpha-p-1) du over
                // u in [1/(1+hi/sigma), 1/(1+lo/sigma)].
                const double u_hi = std::isinf(hi) ? 0.0 : 1.0 / (1.0 + hi / sigma);
                const double u_lo = 1.0 / (1.0 + lo / sigma);
                const double b_upper = boost::math::beta(alpha - p, p + 1.0, u_lo);
                const double b_lower = boost::math::beta(alpha - p, p + 1.0, u_hi);
                return std::pow(sigma, p) * alpha * (b_upper - b_lower);
            }
            return density_quadrature_moment(p, lo, hi);
        }
        case FadingKind::CompositeRayleighLognormal: {
            // Condition on the lognormal factor S: the exponential part
            // gives incomplete-gamma windows, then integrate over z.
            const double sig = sigma_log_;
            const double z_center = p * sig;  // tilt from the S^p factor
            const double z_lo = std::min(-14.0, z_center - 14.0);
            const double z_hi = std::max(14.0, z_center + 14.0);
            std::vector<double> breaks{0.0, z_center};
            if (lo > 0.0) {
                const double zt = std::log(lo / (p + 1.0)) / sig;
                if (zt > z_lo && zt < z_hi) breaks.push_back(zt);
            }
            if (!std::isinf(hi) && hi > 0.0) {
                const double zt = std::log(hi / (p + 1.0)) / sig;
                if (zt > z_lo && zt < z_hi) breaks.push_back(zt);
            }
            auto integrand = [&](double z) {
                const double s = std::exp(sig * z);
                const double g_hi = std::isinf(hi) ? boost::math::tgamma(p + 1.0)
                                                   : gamma_lower_clamped(p + 1.0, hi / s);
                const double g_lo = gamma_lower_clamped(p + 1.0, lo / s);
                if (g_hi <= g_lo) {
                    return 0.0;
                }
                return normal_pdf(z) * std::pow(s, p) * (g_hi - g_lo);
            };
            QuadratureOptions opt;
            opt.rel_tol = 1e-10;
            opt.abs_tol = 1e-300;
            return integrate(integrand, z_lo, z_hi, opt, breaks).value;
        }
        default:
            return density_quadrature_moment(p, lo, hi);
    }
}

double FadingDistribution::scale_hint() const {
    switch (kind_) {
        case FadingKind::Constant: return a_;
        case FadingKind::RayleighPower: return a_;
        case FadingKind::Lognormal: return std::exp(0.5 * sigma_log_ * sigma_log_);
        case FadingKind::Gamma: return a_ * b_;
        case FadingKind::Pareto: return a_ > 1.0 ? b_ / (a_ - 1.0) : b_;
        case FadingKind::CompositeRayleighLognormal:
            return std::exp(0.5 * sigma_log_ * sigma_log_);
        case FadingKind::Truncated: return std::min(cap_, base_->scale_hint());
    }
    return 1.0;
}

double FadingDistribution::density_quadrature_moment(double p, double lo, double hi) const {
    const double support_hi = upper_support();
    const double upper = std::min(hi, support_hi);
    if (upper <= lo) {
        return 0.0;
    }
    auto integrand = [&](double x) { return std::pow(x, p) * density(x); };

    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-300;

    // Panel hints: the density scale and the window edges, log-spread for
    // heavy tails whose moment mass sits far from the mode.
    const double scale = scale_hint();
    if (std::isinf(upper)) {
        std::vector<double> breaks = log_spaced_breaks(std::max(lo, 1e-8 * scale),
                                                       std::max(scale * 4.0, lo * 2.0 + 1.0), 2);
        const double mid = std::max({scale * 4.0, lo * 2.0, 1.0});
        QuadratureResult head = integrate(integrand, lo, mid, opt, breaks);
        QuadratureResult tail = integrate_to_infinity(integrand, mid, opt);
        return head.value + tail.value;
    }
    std::vector<double> breaks = log_spaced_breaks(std::max(lo, 1e-12 * upper), upper, 2);
    if (scale > lo && scale < upper) {
        breaks.push_back(scale);
    }
    return integrate(integrand, lo, upper, opt, breaks).value;
}

std::string FadingDistribution::describe() const {
    switch (kind_) {
        case FadingKind::Constant: return "constant(" + fmt(a_) + ")";
        case FadingKind::RayleighPower: return "rayleigh(mean=" + fmt(a_) + ")";
        case FadingKind::Lognormal: return "lognormal(sigma_db=" + fmt(a_) + ")";
        case FadingKind::Gamma: return "gamma(shape=" + fmt(a_) + ", scale=" + fmt(b_) + ")";
        case FadingKind::Pareto: return "pareto(alpha=" + fmt(a_) + ", sigma=" + fmt(b_) + ")";
        case FadingKind::CompositeRayleighLognormal:
            return "composite(sigma_db=" + fmt(a_) + ")";
        case FadingKind::Truncated:
            return "truncated(" + base_->describe() + ", cap=" + fmt(cap_) + ")";
    }
    return "?";
}

}  // namespace udn
