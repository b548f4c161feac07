#include "udn/pathloss.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "udn/errors.hpp"

namespace udn {

double PathLossModel::alpha(int k) const {
    const double beta = exponents.at(k);
    if (beta == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(d) / beta;
}

double PathLossModel::tail_coeff(int k) const {
    if (k == 0) {
        return exponents[0] == 0.0 ? amplitudes[0] : 0.0;
    }
    const int seg = std::min(k, slope_count - 1);
    return std::exp(log_amplitudes[seg] + exponents[seg] * std::log(breakpoints.at(k)));
}

PathLossModel build_pathloss(double a0, const std::vector<double>& exponents,
                             const std::vector<double>& interior_breakpoints,
                             const NetworkDomain& domain) {
    const int k_slopes = static_cast<int>(exponents.size());
    if (k_slopes < 1) {
        throw ValidationError("path loss needs at least one slope");
    }
    if (static_cast<int>(interior_breakpoints.size()) != k_slopes - 1) {
        throw ValidationError("expected " + std::to_string(k_slopes - 1) +
                              " interior breakpoints for " + std::to_string(k_slopes) +
                              " slopes, got " + std::to_string(interior_breakpoints.size()));
    }
    if (!(a0 > 0.0) || !std::isfinite(a0)) {
        throw ValidationError("anchor amplitude must be positive and finite");
    }
    if (!(exponents[0] >= 0.0)) {
        throw ValidationError("near-field exponent must be non-negative (got " +
                              std::to_string(exponents[0]) + ")");
    }
    for (int k = 1; k < k_slopes; ++k) {
        if (!(exponents[k] >= domain.d - 1)) {
            throw ValidationError("far-field exponent " + std::to_string(exponents[k]) +
                                  " at slope " + std::to_string(k) + " is below the floor d-1 = " +
                                  std::to_string(domain.d - 1));
        }
    }
    for (int k = 0; k + 1 < k_slopes; ++k) {
        if (!(exponents[k] < exponents[k + 1])) {
            throw ValidationError("exponents must be strictly increasing (slope " +
                                  std::to_string(k) + " -> " + std::to_string(k + 1) + ")");
        }
    }

    PathLossModel model;
    model.slope_count = k_slopes;
    model.d = domain.d;
    model.exponents = exponents;
    model.breakpoints.push_back(0.0);
    for (double r : interior_breakpoints) {
        model.breakpoints.push_back(r);
    }
    model.breakpoints.push_back(domain.r_inf);
    for (std::size_t i = 0; i + 1 < model.breakpoints.size(); ++i) {
        if (!(model.breakpoints[i] < model.breakpoints[i + 1])) {
            throw ValidationError(
                "breakpoints must be strictly increasing and stay below the domain radius (r[" +
                std::to_string(i) + "] = " + std::to_string(model.breakpoints[i]) + ")");
        }
    }

    model.log_amplitudes.resize(k_slopes);
    model.log_amplitudes[0] = std::log(a0);
    for (int k = 0; k + 1 < k_slopes; ++k) {
        // A_k R^b_k = A_{k+1} R^b_{k+1} at the shared breakpoint R.
        model.log_amplitudes[k + 1] = model.log_amplitudes[k] +
                                      (exponents[k] - exponents[k + 1]) *
                                          std::log(model.breakpoints[k + 1]);
    }
    model.amplitudes.resize(k_slopes);
    for (int k = 0; k < k_slopes; ++k) {
        model.amplitudes[k] = std::exp(model.log_amplitudes[k]);
        if (!(model.amplitudes[k] > 0.0) || !std::isfinite(model.amplitudes[k])) {
            throw ValidationError("amplitude at slope " + std::to_string(k) +
                                  " over/underflowed; parameters out of range");
        }
    }

    for (int k = 0; k + 1 < k_slopes; ++k) {
        const double r = model.breakpoints[k + 1];
        const double left = model.amplitudes[k] * std::pow(r, exponents[k]);
        const double right = model.amplitudes[k + 1] * std::pow(r, exponents[k + 1]);
        if (std::abs(left - right) > 1e-12 * std::max(left, right)) {
            throw ValidationError("amplitude chaining lost continuity at breakpoint " +
                                  std::to_string(r));
        }
    }
    return model;
}

double eval_pathloss(const PathLossModel& model, double r) {
    if (r < 0.0 || r > model.breakpoints.back()) {
        throw std::domain_error("distance " + std::to_string(r) +
                                " outside the modeled range [0, " +
                                std::to_string(model.breakpoints.back()) + "]");
    }
    int k = model.slope_count - 1;
    for (int i = 0; i + 1 < model.slope_count; ++i) {
        if (r < model.breakpoints[i + 1]) {
            k = i;
            break;
        }
    }
    return model.amplitudes[k] * std::pow(r, model.exponents[k]);
}

bool is_bounded(const PathLossModel& model) { return model.exponents[0] == 0.0; }

bool is_physical(const PathLossModel& model) {
    return is_bounded(model) && model.amplitudes[0] >= 1.0;
}

namespace {

double ipow(double x, int n) {
    double acc = 1.0;
    while (n > 0) {
        if (n & 1) acc *= x;
        x *= x;
        n >>= 1;
    }
    return acc;
}

}  // namespace

PathLossEvaluator::PathLossEvaluator(const PathLossModel& model) {
    segments_.reserve(model.slope_count);
    for (int k = 0; k < model.slope_count; ++k) {
        Segment seg;
        seg.upper = model.breakpoints[k + 1];
        seg.amplitude = model.amplitudes[k];
        seg.beta = model.exponents[k];
        const double rounded = std::nearbyint(seg.beta);
        seg.int_beta = (seg.beta == rounded && rounded >= 0.0 && rounded <= 8.0)
                           ? static_cast<int>(rounded)
                           : -1;
        segments_.push_back(seg);
    }
}

double PathLossEvaluator::operator()(double r) const {
    std::size_t k = segments_.size() - 1;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        if (r < segments_[i].upper) {
            k = i;
            break;
        }
    }
    const Segment& seg = segments_[k];
    if (seg.int_beta == 0) {
        return seg.amplitude;
    }
    if (seg.int_beta > 0) {
        return seg.amplitude * ipow(r, seg.int_beta);
    }
    return seg.amplitude * std::pow(r, seg.beta);
}

}  // namespace udn
