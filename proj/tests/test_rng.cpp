#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "udn/rng.hpp"
#include "udn/stats.hpp"

using namespace udn;

TEST_CASE("streams reproduce exactly and differ across keys") {
    RandomStream a(42, rng_tag::kSinr, 3, 7);
    RandomStream b(42, rng_tag::kSinr, 3, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    std::set<std::uint64_t> firsts;
    for (std::uint64_t item = 0; item < 64; ++item) {
        firsts.insert(RandomStream(42, rng_tag::kSinr, 3, item).next_u64());
    }
    for (std::uint64_t point = 0; point < 64; ++point) {
        firsts.insert(RandomStream(42, rng_tag::kSinr, point, 7).next_u64());
    }
    CHECK(firsts.size() == 127);  // (3,7) appears in both scans
}

TEST_CASE("uniforms stay strictly inside (0,1) and look uniform") {
    RandomStream rng(7, 1, 0, 0);
    double sum = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    const double mean = sum / 200000;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 200000));
}

TEST_CASE("normals have the right first two moments") {
    RandomStream rng(11, 2, 0, 0);
    std::vector<double> z(200000);
    for (double& v : z) v = rng.next_normal();
    const MeanVariance mv = mean_variance(z);
    CHECK(std::abs(mv.mean) < 4.0 / std::sqrt(200000.0));
    CHECK(std::abs(mv.variance - 1.0) < 4.0 * std::sqrt(2.0 / 200000.0));
}

TEST_CASE("poisson draws match the first two moments across regimes") {
    RandomStream rng(13, 3, 0, 0);
    CHECK(rng.next_poisson(0.0) == 0);

    for (double mean : {3.0, 25.0, 5000.0, 502654.82}) {
        const int t = mean > 1000 ? 4000 : 30000;
        std::vector<double> counts(t);
        for (double& c : counts) c = static_cast<double>(rng.next_poisson(mean));
        const MeanVariance mv = mean_variance(counts);
        // Poisson: variance = mean, Var(sample variance) ~ (mu + 2 mu^2)/T.
        CHECK(std::abs(mv.mean - mean) < 4.0 * std::sqrt(mean / t));
        CHECK(std::abs(mv.variance - mean) < 4.0 * std::sqrt((mean + 2.0 * mean * mean) / t));
    }
}

TEST_CASE("exponential mean is right") {
    RandomStream rng(17, 4, 0, 0);
    std::vector<double> e(200000);
    for (double& v : e) v = rng.next_exponential();
    const MeanVariance mv = mean_variance(e);
    CHECK(std::abs(mv.mean - 1.0) < 4.0 * mv.std_error);
}
