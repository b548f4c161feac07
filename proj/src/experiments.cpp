#include "udn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "udn/errors.hpp"

namespace udn {

namespace {

constexpr double kFarFieldShare = 1e-3;  // allowed excluded share of mean interference

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::Growth: return "growth";
        case Regime::Saturation: return "saturation";
        case Regime::InverseU: return "inverse_u";
        case Regime::Unclassified: return "unclassified";
    }
    return "?";
}

Regime regime_from_power_class(const TailClass& power_tail) {
    if (power_tail.kind == TailKind::RegularlyVarying) {
        const double idx = power_tail.index;
        if (idx == 0.0) {
            return Regime::Growth;
        }
        if (idx == 1.0) {
            throw UnsupportedCaseError(
                "power tail index exactly 1 sits on the case boundary; no prediction");
        }
        return idx < 1.0 ? Regime::Saturation : Regime::InverseU;
    }
    return Regime::InverseU;
}

Regime predict_regime(const PathLossModel& model, const FadingDistribution& fading,
                      const NetworkDomain& domain) {
    (void)domain;
    const TailClass power = classify_received_power(model, fading);
    const Regime regime = regime_from_power_class(power);

    // Redundant cross-check against the coarse (beta_0 vs d, fading class)
    // table; a mismatch would mean the classification map is broken.
    const double beta0 = model.exponents[0];
    const TailClass& fc = fading.tail_class();
    std::optional<Regime> table;
    if (fc.kind == TailKind::RegularlyVarying) {
        if (fc.index == 0.0) {
            table = Regime::Growth;
        } else if (fc.index < 1.0) {
            table = Regime::Saturation;
        } else if (fc.index > 1.0) {
            if (beta0 < model.d) table = Regime::InverseU;
            if (beta0 > model.d) table = Regime::Saturation;
        }
    } else {
        if (beta0 < model.d) table = Regime::InverseU;
        if (beta0 > model.d) table = Regime::Saturation;
    }
    if (table && *table != regime) {
        throw std::logic_error("regime map disagrees with the summary table for " +
                               fading.describe());
    }
    return regime;
}

SweepResult run_sweep(const SimConfig& cfg, const std::vector<double>& lambdas,
                      const std::vector<double>& y_refs, std::string config_fingerprint) {
    if (lambdas.size() < 8) {
        throw ValidationError("density sweep needs at least 8 grid points");
    }
    if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
        throw ValidationError("density grid must be ascending");
    }
    double lo_positive = 0.0;
    for (double l : lambdas) {
        if (l > 0.0) {
            lo_positive = l;
            break;
        }
    }
    if (lo_positive == 0.0 || lambdas.back() / lo_positive < 1e4 * (1.0 - 1e-9)) {
        throw ValidationError("density grid must span at least 4 decades");
    }

    SweepResult sweep;
    sweep.lambdas = lambdas;
    sweep.y_refs = y_refs;
    sweep.trials = cfg.trials;
    sweep.seed = cfg.seed;
    sweep.config_fingerprint = std::move(config_fingerprint);
    sweep.points.resize(lambdas.size());

    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        SweepPoint& point = sweep.points[j];
        point.lambda = lambdas[j];
        try {
            const std::vector<double> sinr = simulate_batch(cfg, lambdas[j], j);
            point.coverage = coverage_from_samples(sinr, y_refs, lambdas[j], cfg.seed);
            point.capacity = capacity_from_samples(sinr, lambdas[j]);
        } catch (const std::exception& e) {
            point.failed = true;
            point.error = e.what();
        }
    }
    return sweep;
}

namespace {

std::size_t y_ref_index(const SweepResult& sweep, double y_ref) {
    for (std::size_t i = 0; i < sweep.y_refs.size(); ++i) {
        if (std::abs(sweep.y_refs[i] - y_ref) <= 1e-9 * y_ref) {
            return i;
        }
    }
    throw ValidationError("reference threshold " + fmt(y_ref) + " is not on the sweep grid");
}

}  // namespace

ObservedClassification classify_observed(const SweepResult& sweep, double y_ref,
                                         const ClassifyOptions& opt) {
    const std::size_t yi = y_ref_index(sweep, y_ref);

    std::vector<double> lambda, p, se, ci;
    for (const SweepPoint& pt : sweep.points) {
        if (pt.failed) continue;
        lambda.push_back(pt.lambda);
        p.push_back(pt.coverage.p_hat[yi]);
        ci.push_back(pt.coverage.ci_halfwidth[yi]);
        se.push_back(pt.coverage.ci_halfwidth[yi] / 1.959963984540054);
    }
    ObservedClassification out;
    if (lambda.size() < 4) {
        out.diagnostics = "too few usable sweep points";
        return out;
    }
    const std::size_t last = lambda.size() - 1;
    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());

    // Ratio of the top-density coverage to the grid point one decade below.
    std::size_t decade = last;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 <= last; ++j) {
        if (lambda[j] <= 0.0) continue;
        const double miss = std::abs(std::log10(10.0 * lambda[j] / lambda[last]));
        if (miss < best) {
            best = miss;
            decade = j;
        }
    }
    const bool have_ratio = decade != last && p[decade] > 0.0;
    out.u_ratio = have_ratio ? p[last] / p[decade] : std::numeric_limits<double>::quiet_NaN();

    std::ostringstream diag;
    diag << "p_top=" << fmt(p[last]) << " p_peak=" << fmt(p[peak]) << " peak_at_per_km2="
         << fmt(lambda[peak] * 1e6) << " u_ratio=" << fmt(out.u_ratio);
    out.diagnostics = diag.str();

    // Growth: essentially full coverage at the top of the grid and no
    // statistically higher point anywhere below.
    if (p[last] > 1.0 - opt.epsilon && p[last] >= p[peak] - 2.0 * (se[last] + se[peak])) {
        out.regime = Regime::Growth;
        return out;
    }

    // Inverse U: an interior peak that clears both grid endpoints, with the
    // top of the grid confidently below it.
    if (peak > 0 && peak < last) {
        const double sep_first = (p[peak] - p[0]) /
                                 std::sqrt(se[peak] * se[peak] + se[0] * se[0] + 1e-300);
        const double sep_last = (p[peak] - p[last]) /
                                std::sqrt(se[peak] * se[peak] + se[last] * se[last] + 1e-300);
        const bool top_below_peak = p[last] + ci[last] < p[peak] - ci[peak];
        if (sep_first >= opt.peak_sigmas && sep_last >= opt.peak_sigmas && top_below_peak) {
            out.regime = Regime::InverseU;
            return out;
        }
    }

    // Saturation: flat across the top decade with overlapping intervals,
    // away from zero coverage.
    if (have_ratio && std::abs(out.u_ratio - 1.0) < opt.delta && p[last] > opt.floor) {
        const bool overlap = p[last] - ci[last] <= p[decade] + ci[decade] &&
                             p[decade] - ci[decade] <= p[last] + ci[last];
        if (overlap) {
            out.regime = Regime::Saturation;
            return out;
        }
    }

    out.regime = Regime::Unclassified;
    return out;
}

namespace {

struct Prober {
    const SimConfig& base;
    int trials;
    std::uint64_t counter = 0;

    double coverage(double lambda, double y_ref) {
        SimConfig cfg = base;
        cfg.trials = trials;
        cfg.seed = derive_key(base.seed, rng_tag::kProbe, counter++, 0);
        const std::vector<double> sinr = simulate_batch(cfg, lambda);
        return coverage_from_samples(sinr, {y_ref}, lambda, cfg.seed).p_hat[0];
    }

    double capacity(double lambda) {
        SimConfig cfg = base;
        cfg.trials = trials;
        cfg.seed = derive_key(base.seed, rng_tag::kProbe, counter++, 0);
        const std::vector<double> sinr = simulate_batch(cfg, lambda);
        return capacity_from_samples(sinr, lambda).c_hat;
    }
};

template <typename Objective>
DensityBracket golden_section_max(double lambda_lo, double lambda_hi, Objective&& objective,
                                  const OptimizeOptions& opt) {
    constexpr double kPhi = 0.6180339887498949;
    double a = std::log(lambda_lo);
    double b = std::log(lambda_hi);
    for (int it = 0; it < opt.max_iterations && (b - a) > opt.bracket_log10 * M_LN10; ++it) {
        const double x1 = b - kPhi * (b - a);
        const double x2 = a + kPhi * (b - a);
        // Majority of three fresh paired probes decides the comparison.
        int wins = 0;
        for (int rep = 0; rep < 3; ++rep) {
            const double f1 = objective(std::exp(x1));
            const double f2 = objective(std::exp(x2));
            if (f1 > f2) ++wins;
        }
        if (wins >= 2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    return DensityBracket{std::exp(0.5 * (a + b)), std::exp(a), std::exp(b)};
}

}  // namespace

OptimalDensities find_optimal_density(const SweepResult& sweep, const SimConfig& cfg,
                                      double y_ref, const OptimizeOptions& opt) {
    const ObservedClassification cls = classify_observed(sweep, y_ref);
    if (cls.regime != Regime::InverseU) {
        throw ValidationError("optimal density search requires an observed inverse-U sweep (got " +
                              to_string(cls.regime) + ")");
    }
    const std::size_t yi = y_ref_index(sweep, y_ref);

    std::vector<double> lambda, p, c;
    for (const SweepPoint& pt : sweep.points) {
        if (pt.failed) continue;
        lambda.push_back(pt.lambda);
        p.push_back(pt.coverage.p_hat[yi]);
        c.push_back(pt.capacity.c_hat);
    }
    const std::size_t last = lambda.size() - 1;
    const auto bracket_around = [&](std::size_t j) {
        const std::size_t lo = j > 0 ? j - 1 : 0;
        const std::size_t hi = j < last ? j + 1 : last;
        return std::pair<double, double>(lambda[lo], lambda[hi]);
    };

    Prober prober{cfg, opt.probe_trials > 0 ? opt.probe_trials : sweep.trials};

    OptimalDensities out;
    const std::size_t jp =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    const auto [plo, phi] = bracket_around(jp);
    out.coverage = golden_section_max(
        plo, phi, [&](double l) { return prober.coverage(l, y_ref); }, opt);

    const std::size_t jc =
        static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
    const auto [clo, chi] = bracket_around(jc);
    out.capacity = golden_section_max(
        clo, chi, [&](double l) { return prober.capacity(l); }, opt);
    return out;
}

namespace {

// d * v_d * Integral r^(d-1) / l(r) dr over [lo, hi], per-segment closed form.
double interference_geometry(const PathLossModel& model, int d, double lo, double hi) {
    double total = 0.0;
    const double dv = d * unit_ball_volume(d);
    for (int k = 0; k < model.slope_count; ++k) {
        const double seg_lo = std::max(lo, model.breakpoints[k]);
        const double seg_hi = std::min(hi, model.breakpoints[k + 1]);
        if (seg_hi <= seg_lo) continue;
        const double e = d - model.exponents[k];  // exponent of the antiderivative
        double piece;
        if (std::abs(e) < 1e-12) {
            piece = std::log(seg_hi / seg_lo);
        } else {
            piece = (std::pow(seg_hi, e) - std::pow(seg_lo, e)) / e;
        }
        total += dv * piece / model.amplitudes[k];
    }
    return total;
}

}  // namespace

std::optional<double> auto_truncation_radius(const PathLossModel& model,
                                             const FadingDistribution& fading,
                                             const NetworkDomain& domain) {
    if (!std::isfinite(fading.mean())) {
        return std::nullopt;  // the excluded-interference bound is vacuous
    }
    const int d = domain.d;
    const double r_inf = domain.r_inf;
    // Baseline region for the retained interference. A near field steeper
    // than the dimension makes the full integral diverge at the origin, so
    // the comparison then starts at the first breakpoint (conservative).
    double base_lo = 0.0;
    if (model.exponents[0] >= d) {
        base_lo = model.slope_count > 1 ? model.breakpoints[1] : 1e-3 * r_inf;
    }

    const auto acceptable = [&](double r) {
        const double far_bound = unit_ball_volume(d) *
                                 (std::pow(r_inf, d) - std::pow(r, d)) / eval_pathloss(model, r);
        const double within = interference_geometry(model, d, base_lo, r);
        return far_bound <= kFarFieldShare * within;
    };

    const double floor =
        model.slope_count > 1 ? 2.0 * model.breakpoints[1] : 1e-3 * r_inf;
    if (floor >= r_inf) {
        return r_inf;
    }
    if (acceptable(floor)) {
        return floor;
    }
    double lo = std::log(floor);
    double hi = std::log(r_inf);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (acceptable(std::exp(mid))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return std::min(std::exp(hi), r_inf);
}

std::string format_regime_report(const RegimeReport& report) {
    std::ostringstream os;
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    os << "config_fingerprint = " << report.config_fingerprint << "\n";
    os << "predicted = " << to_string(report.predicted) << "\n";
    os << "observed = " << to_string(report.observed) << "\n";
    os << "y_ref = " << num(report.y_ref) << "\n";
    os << "u_ratio = " << num(report.u_ratio) << "\n";
    if (report.optima) {
        os << "lambda_p_per_km2 = " << num(report.optima->coverage.lambda * 1e6) << "\n";
        os << "lambda_p_lo_per_km2 = " << num(report.optima->coverage.lo * 1e6) << "\n";
        os << "lambda_p_hi_per_km2 = " << num(report.optima->coverage.hi * 1e6) << "\n";
        os << "lambda_c_per_km2 = " << num(report.optima->capacity.lambda * 1e6) << "\n";
        os << "lambda_c_lo_per_km2 = " << num(report.optima->capacity.lo * 1e6) << "\n";
        os << "lambda_c_hi_per_km2 = " << num(report.optima->capacity.hi * 1e6) << "\n";
    }
    os << "diagnostics = " << report.diagnostics << "\n";
    return os.str();
}

}  // namespace udn
