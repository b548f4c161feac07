#include "doctest.h"

#include <cmath>
#include <vector>

#include "udn/errors.hpp"
#include "udn/pathloss.hpp"
#include "udn/rng.hpp"

using namespace udn;

namespace {

const NetworkDomain kFigDomain(2, 40e3);

PathLossModel fig_model(double beta0) {
    return build_pathloss(1.0, {beta0, 4.0}, {10.0}, kFigDomain);
}

}  // namespace

TEST_CASE("amplitude chaining reproduces the two-slope constants") {
    const PathLossModel m = fig_model(0.0);
    CHECK(m.amplitudes[0] == doctest::Approx(1.0));
    CHECK(m.amplitudes[1] == doctest::Approx(1e-4).epsilon(1e-12));

    CHECK(eval_pathloss(m, 5.0) == doctest::Approx(1.0));
    CHECK(eval_pathloss(m, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eval_pathloss(m, 100.0) == doctest::Approx(1e4).epsilon(1e-12));

    // bounded two-slope model equals max(A0, A1 r^4) pointwise
    for (double r = 0.0; r <= 40e3; r += 173.0) {
        const double expected = std::max(1.0, 1e-4 * std::pow(r, 4.0));
        CHECK(eval_pathloss(m, r) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("single slope degenerates to a pure power law") {
    const NetworkDomain domain(2, 1000.0);
    const PathLossModel m = build_pathloss(2.0, {4.0}, {}, domain);
    CHECK(m.slope_count == 1);
    CHECK(eval_pathloss(m, 7.0) == doctest::Approx(2.0 * std::pow(7.0, 4.0)));
}

TEST_CASE("boundedness and physicality follow the near field") {
    CHECK(is_bounded(fig_model(0.0)));
    CHECK(is_physical(fig_model(0.0)));
    CHECK_FALSE(is_bounded(fig_model(3.0)));
    const PathLossModel gain = build_pathloss(0.5, {0.0, 4.0}, {10.0}, kFigDomain);
    CHECK(is_bounded(gain));
    CHECK_FALSE(is_physical(gain));
}

TEST_CASE("constraint violations name the failed condition") {
    CHECK_THROWS_WITH_AS(build_pathloss(1.0, {-0.5, 4.0}, {10.0}, kFigDomain),
                         doctest::Contains("near-field exponent"), ValidationError);
    CHECK_THROWS_WITH_AS(build_pathloss(1.0, {0.0, 0.5}, {10.0}, kFigDomain),
                         doctest::Contains("far-field exponent"), ValidationError);
    CHECK_THROWS_WITH_AS(build_pathloss(1.0, {0.0, 4.0, 3.0}, {10.0, 100.0}, kFigDomain),
                         doctest::Contains("strictly increasing"), ValidationError);
    CHECK_THROWS_WITH_AS(build_pathloss(1.0, {0.0, 4.0}, {50e3}, kFigDomain),
                         doctest::Contains("breakpoints"), ValidationError);
    CHECK_THROWS_AS(build_pathloss(0.0, {0.0, 4.0}, {10.0}, kFigDomain), ValidationError);
    CHECK_THROWS_AS(eval_pathloss(fig_model(0.0), 40e3 + 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_pathloss(fig_model(0.0), -1.0), std::domain_error);
}

TEST_CASE("derived constants of the figure models") {
    const PathLossModel bounded = fig_model(0.0);
    CHECK(std::isinf(bounded.alpha(0)));
    CHECK(bounded.alpha(1) == doctest::Approx(0.5));
    CHECK(bounded.tail_coeff(0) == doctest::Approx(1.0));   // A0 under a flat near field
    CHECK(bounded.tail_coeff(1) == doctest::Approx(1.0));   // continuity at 10 m
    CHECK(bounded.tail_coeff(2) == doctest::Approx(2.56e14).epsilon(1e-10));

    const PathLossModel steep = fig_model(3.0);
    CHECK(steep.alpha(0) == doctest::Approx(2.0 / 3.0));
    CHECK(steep.tail_coeff(0) == doctest::Approx(0.0));
}

TEST_CASE("random models stay continuous and monotone past the first breakpoint") {
    RandomStream rng(37, 5, 0, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng.next_uniform() * 3.0);
        const int k = 1 + static_cast<int>(rng.next_uniform() * 4.0);
        const NetworkDomain domain(d, 1e3 + rng.next_uniform() * 1e5);

        std::vector<double> exponents;
        double beta = rng.next_uniform() < 0.3 ? 0.0 : rng.next_uniform() * (d - 0.5);
        for (int i = 0; i < k; ++i) {
            exponents.push_back(beta);
            beta = std::max(beta + 0.3 + rng.next_uniform() * 2.0, d - 1.0 + 0.01);
        }
        std::vector<double> breakpoints;
        double r = domain.r_inf;
        for (int i = 0; i < k - 1; ++i) r *= 0.05 + 0.5 * rng.next_uniform();
        for (int i = 0; i < k - 1; ++i) {
            breakpoints.push_back(r);
            r /= 0.05 + 0.5 * rng.next_uniform();
        }
        std::sort(breakpoints.begin(), breakpoints.end());
        if (!breakpoints.empty() && breakpoints.back() >= domain.r_inf) continue;

        const PathLossModel m =
            build_pathloss(0.1 + rng.next_uniform() * 10.0, exponents, breakpoints, domain);
        const PathLossEvaluator fast(m);

        for (int b = 1; b < m.slope_count; ++b) {
            const double rb = m.breakpoints[b];
            const double left = eval_pathloss(m, std::nextafter(rb, 0.0));
            const double right = eval_pathloss(m, rb);
            CHECK(std::abs(left - right) / right < 1e-10);
        }
        double prev = 0.0;
        const double r1 = m.breakpoints[1 % (m.slope_count + 1)];
        for (int i = 0; i <= 64; ++i) {
            const double x = std::min(r1 + (domain.r_inf - r1) * i / 64.0, domain.r_inf);
            const double v = eval_pathloss(m, x);
            CHECK(v >= prev * (1.0 - 1e-12));
            CHECK(fast(x) == doctest::Approx(v).epsilon(1e-12));
            prev = v;
        }
    }
}
