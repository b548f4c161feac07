#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "udn/rng.hpp"

namespace udn {

// Bounded d-dimensional deployment region. Lengths are meters everywhere in
// this library; per-km^2 densities are converted at the config boundary.
struct NetworkDomain {
    int d = 2;             // spatial dimension, 1..3
    double r_inf = 0.0;    // outer radius in meters

    NetworkDomain(int dimension, double outer_radius_m);
    double ball_volume() const;  // volume of the radius-r_inf d-ball
};

struct DensityConfig {
    double lambda = 0.0;  // nodes per unit d-volume (per m^d)

    explicit DensityConfig(double lambda_per_unit_volume);
};

// Unit d-ball volume: 2, pi, 4*pi/3 for d = 1, 2, 3.
double unit_ball_volume(int d);

// CDF of the distance from the origin to a uniformly placed node:
// (r / r_inf)^d on [0, r_inf], 1 beyond. Throws on negative r.
double distance_cdf(double r, const NetworkDomain& domain);

// Draws one Poisson-field realization restricted to radius `max_radius`
// (pass domain.r_inf for the full region) and feeds each node distance to
// `visit`. Returns the node count. Only distances are generated; everything
// downstream depends on position through distance alone.
template <typename Visitor>
std::uint64_t for_each_distance(const DensityConfig& density, const NetworkDomain& domain,
                                double max_radius, RandomStream& rng, Visitor&& visit) {
    const double mean = density.lambda * unit_ball_volume(domain.d) *
                        std::pow(max_radius, static_cast<double>(domain.d));
    const std::uint64_t count = rng.next_poisson(mean);
    const double inv_d = 1.0 / domain.d;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double u = rng.next_uniform();
        double r;
        if (domain.d == 1) {
            r = max_radius * u;
        } else if (domain.d == 2) {
            r = max_radius * std::sqrt(u);
        } else {
            r = max_radius * std::pow(u, inv_d);
        }
        visit(r);
    }
    return count;
}

// Materialized variant of for_each_distance over the full domain.
std::vector<double> sample_distances(const DensityConfig& density, const NetworkDomain& domain,
                                     RandomStream& rng);

}  // namespace udn
