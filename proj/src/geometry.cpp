#include "udn/geometry.hpp"

#include <cmath>
#include <string>

#include "udn/errors.hpp"

namespace udn {

NetworkDomain::NetworkDomain(int dimension, double outer_radius_m)
    : d(dimension), r_inf(outer_radius_m) {
    if (d < 1 || d > 3) {
        throw ValidationError("domain dimension must be 1, 2 or 3 (got " + std::to_string(d) + ")");
    }
    if (!(r_inf > 0.0) || !std::isfinite(r_inf)) {
        throw ValidationError("domain radius must be a finite positive length");
    }
}

double NetworkDomain::ball_volume() const {
    return unit_ball_volume(d) * std::pow(r_inf, static_cast<double>(d));
}

DensityConfig::DensityConfig(double lambda_per_unit_volume) : lambda(lambda_per_unit_volume) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("node density must be finite and non-negative");
    }
}

double unit_ball_volume(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return M_PI;
        case 3: return 4.0 * M_PI / 3.0;
        default: throw ValidationError("dimension must be 1, 2 or 3");
    }
}

double distance_cdf(double r, const NetworkDomain& domain) {
    if (r < 0.0) {
        throw std::domain_error("distance must be non-negative");
    }
    if (r >= domain.r_inf) {
        return 1.0;
    }
    return std::pow(r / domain.r_inf, static_cast<double>(domain.d));
}

std::vector<double> sample_distances(const DensityConfig& density, const NetworkDomain& domain,
                                     RandomStream& rng) {
    std::vector<double> distances;
    for_each_distance(density, domain, domain.r_inf, rng,
                      [&](double r) { distances.push_back(r); });
    return distances;
}

}  // namespace udn
