#include "udn/rng.hpp"

#include <cmath>

#include "udn/errors.hpp"

namespace udn {

double RandomStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

double RandomStream::next_exponential() {
    return -std::log(next_uniform());
}

namespace {

// Multiplicative inversion; sound for small means only.
std::uint64_t poisson_inversion(RandomStream& rng, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t count = 0;
    double product = rng.next_uniform();
    while (product > limit) {
        ++count;
        product *= rng.next_uniform();
    }
    return count;
}

// Hoermann's PTRS transformed-rejection sampler, valid for mean >= 10.
std::uint64_t poisson_ptrs(RandomStream& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_uniform() - 0.5;
        const double v = rng.next_uniform();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        const double k = kf;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

}  // namespace

std::uint64_t RandomStream::next_poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw NumericError("poisson mean must be finite and non-negative");
    }
    if (mean == 0.0) {
        return 0;
    }
    if (mean < 12.0) {
        return poisson_inversion(*this, mean);
    }
    if (mean > 4.0e9) {
        // A single draw this large would exhaust memory/time well before
        // statistics matter; callers are expected to truncate the domain.
        throw NumericError("poisson mean too large to simulate node-by-node");
    }
    return poisson_ptrs(*this, mean);
}

}  // namespace udn
