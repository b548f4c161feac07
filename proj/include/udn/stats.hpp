#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "udn/errors.hpp"

namespace udn {

// Kolmogorov-Smirnov distance between a sample and a reference CDF,
// evaluated exactly at the order statistics.
inline double ks_distance(std::span<const double> samples,
                          const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw ValidationError("KS distance needs samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw ValidationError("KS distance needs samples on both sides");
    }
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

struct MeanVariance {
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
};

inline MeanVariance mean_variance(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("moment estimate needs samples");
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, variance, std::sqrt(variance / n)};
}

}  // namespace udn
