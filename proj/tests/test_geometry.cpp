#include "doctest.h"

#include <cmath>
#include <vector>

#include "udn/geometry.hpp"
#include "udn/stats.hpp"

using namespace udn;

TEST_CASE("distance CDF endpoints and shape") {
    const NetworkDomain domain(2, 40e3);
    CHECK(distance_cdf(40e3, domain) == doctest::Approx(1.0));
    CHECK(distance_cdf(20e3, domain) == doctest::Approx(0.25));
    CHECK(distance_cdf(0.0, domain) == doctest::Approx(0.0));
    CHECK(distance_cdf(50e3, domain) == doctest::Approx(1.0));
    CHECK_THROWS_AS(distance_cdf(-1.0, domain), std::domain_error);

    // non-decreasing on a grid, all dimensions
    for (int d = 1; d <= 3; ++d) {
        const NetworkDomain dd(d, 100.0);
        double prev = 0.0;
        for (double r = 0.0; r <= 110.0; r += 1.0) {
            const double g = distance_cdf(r, dd);
            CHECK(g >= prev);
            prev = g;
        }
    }
}

TEST_CASE("domain and density invariants are enforced") {
    CHECK_THROWS_AS(NetworkDomain(0, 10.0), ValidationError);
    CHECK_THROWS_AS(NetworkDomain(4, 10.0), ValidationError);
    CHECK_THROWS_AS(NetworkDomain(2, 0.0), ValidationError);
    CHECK_THROWS_AS(DensityConfig(-1.0), ValidationError);
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
}

TEST_CASE("zero density always yields an empty list") {
    const NetworkDomain domain(2, 40e3);
    for (int i = 0; i < 32; ++i) {
        RandomStream rng(5, rng_tag::kGeometry, 0, i);
        CHECK(sample_distances(DensityConfig(0.0), domain, rng).empty());
    }
}

TEST_CASE("node count matches the Poisson mean at figure scale") {
    // 100 per km^2 over a 40 km disc: mean about 502655. The count path is
    // exercised via the same generator the full sampler consumes.
    const NetworkDomain domain(2, 40e3);
    const double mean = 100e-6 * unit_ball_volume(2) * domain.r_inf * domain.r_inf;
    CHECK(mean == doctest::Approx(502654.82).epsilon(1e-6));

    RandomStream rng(23, rng_tag::kGeometry, 0, 0);
    const int t = 1000;
    std::vector<double> counts(t);
    for (double& c : counts) c = static_cast<double>(rng.next_poisson(mean));
    const MeanVariance mv = mean_variance(counts);
    CHECK(std::abs(mv.mean - mean) < 3.0 * std::sqrt(mean / t));
}

TEST_CASE("sampled batches hit the count law and stay inside the domain") {
    const NetworkDomain domain(2, 40e3);
    const DensityConfig density(1e-5 / M_PI);  // mean = 1e-5 * r^2 = 16000
    const double mean = density.lambda * domain.ball_volume();

    const int t = 600;
    std::vector<double> counts(t);
    for (int i = 0; i < t; ++i) {
        RandomStream rng(29, rng_tag::kGeometry, 1, i);
        const std::vector<double> r = sample_distances(density, domain, rng);
        counts[i] = static_cast<double>(r.size());
        if (i < 5) {
            for (double x : r) {
                REQUIRE(x >= 0.0);
                REQUIRE(x <= domain.r_inf);
            }
        }
    }
    const MeanVariance mv = mean_variance(counts);
    CHECK(std::abs(mv.mean - mean) < 4.0 * std::sqrt(mean / t));
    CHECK(std::abs(mv.variance - mean) < 4.0 * std::sqrt((mean + 2.0 * mean * mean) / t));
}

TEST_CASE("empirical distance law matches the CDF") {
    for (int d : {1, 2, 3}) {
        const NetworkDomain domain(d, 500.0);
        const DensityConfig density(120000.0 / domain.ball_volume());
        std::vector<double> r;
        int item = 0;
        while (r.size() < 100000) {
            RandomStream rng(31, rng_tag::kGeometry, 2, item++);
            const std::vector<double> batch = sample_distances(density, domain, rng);
            r.insert(r.end(), batch.begin(), batch.end());
        }
        const double ks =
            ks_distance(r, [&](double x) { return distance_cdf(x, domain); });
        CHECK(ks < 0.01);
    }
}
