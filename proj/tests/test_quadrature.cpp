#include "doctest.h"

#include <cmath>

#include "udn/errors.hpp"
#include "udn/quadrature.hpp"

using namespace udn;

TEST_CASE("polynomials and gaussians integrate to known values") {
    const QuadratureResult cube = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(cube.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const QuadratureResult gauss = integrate(
        [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }, -14.0, 14.0);
    CHECK(gauss.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log-spread integrands need the seeded breaks") {
    // mass spread over 8 decades
    auto f = [](double x) { return 1.0 / (x * x); };
    const QuadratureResult r =
        integrate(f, 1.0, 1e8, {}, log_spaced_breaks(1.0, 1e8));
    CHECK(r.value == doctest::Approx(1.0 - 1e-8).epsilon(1e-10));
}

TEST_CASE("semi-infinite integrals settle or report divergence") {
    const QuadratureResult decay = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
    CHECK(decay.value == doctest::Approx(1.0).epsilon(1e-9));

    const QuadratureResult heavy =
        integrate_to_infinity([](double x) { return std::pow(x, -2.5); }, 1.0);
    CHECK(heavy.value == doctest::Approx(1.0 / 1.5).epsilon(1e-8));

    CHECK_THROWS_AS(integrate_to_infinity([](double x) { return 1.0 / x; }, 1.0),
                    DivergenceError);
}

TEST_CASE("non-finite integrand values are reported") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0),
                    NumericError);
}
