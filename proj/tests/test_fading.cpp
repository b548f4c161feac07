#include "doctest.h"

#include <cmath>
#include <vector>

#include "udn/errors.hpp"
#include "udn/fading.hpp"
#include "udn/quadrature.hpp"
#include "udn/stats.hpp"

using namespace udn;

namespace {

std::vector<double> draw(const FadingDistribution& f, std::size_t n, std::uint64_t seed) {
    std::vector<double> x(n);
    RandomStream rng(seed, 0x66616465, 0, 0);
    for (double& v : x) v = f.sample(rng);
    return x;
}

// CCDF table on a log grid for KS checks against expensive CCDFs.
struct CcdfTable {
    std::vector<double> log_x, tail;

    CcdfTable(const FadingDistribution& f, double lo, double hi, int n) {
        log_x.resize(n);
        tail.resize(n);
        for (int i = 0; i < n; ++i) {
            log_x[i] = std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1);
            tail[i] = f.ccdf(std::exp(log_x[i]));
        }
    }
    double operator()(double x) const {
        const double lx = std::log(std::max(x, 1e-300));
        if (lx <= log_x.front()) return tail.front();
        if (lx >= log_x.back()) return tail.back();
        const auto it = std::upper_bound(log_x.begin(), log_x.end(), lx);
        const std::size_t i = static_cast<std::size_t>(it - log_x.begin()) - 1;
        const double w = (lx - log_x[i]) / (log_x[i + 1] - log_x[i]);
        return tail[i] + w * (tail[i + 1] - tail[i]);
    }
};

}  // namespace

TEST_CASE("pointwise CCDF identities") {
    const FadingDistribution pareto = FadingDistribution::pareto(4.0, 2.0);
    CHECK(pareto.ccdf(0.0) == doctest::Approx(1.0));
    CHECK(pareto.ccdf(2.0) == doctest::Approx(std::pow(2.0, -4.0)));

    const FadingDistribution ray = FadingDistribution::rayleigh_power(3.0);
    CHECK(ray.ccdf(3.0 * std::log(2.0)) == doctest::Approx(0.5));
    CHECK(ray.ccdf(0.0) == doctest::Approx(1.0));

    const FadingDistribution c = FadingDistribution::constant(2.0);
    CHECK(c.ccdf(1.9999) == doctest::Approx(1.0));
    CHECK(c.ccdf(2.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(c.density(1.0), UnsupportedCaseError);
}

TEST_CASE("declared tail classes") {
    CHECK(FadingDistribution::pareto(0.5).tail_class().kind == TailKind::RegularlyVarying);
    CHECK(FadingDistribution::pareto(0.5).tail_class().index == doctest::Approx(0.5));
    CHECK(FadingDistribution::rayleigh_power(1.0).tail_class().kind == TailKind::RapidlyVarying);
    CHECK(FadingDistribution::lognormal(8.0).tail_class().kind == TailKind::RapidlyVarying);
    CHECK(FadingDistribution::gamma(2.0, 1.0).tail_class().kind == TailKind::RapidlyVarying);
    CHECK(FadingDistribution::composite_rayleigh_lognormal(8.0).tail_class().kind ==
          TailKind::RapidlyVarying);
    CHECK(FadingDistribution::constant(1.0).tail_class().kind == TailKind::LighterThanRapid);
    const FadingDistribution trunc =
        FadingDistribution::truncated(FadingDistribution::rayleigh_power(1.0), 5.0);
    CHECK(trunc.tail_class().kind == TailKind::LighterThanRapid);
}

TEST_CASE("densities integrate to one") {
    const std::vector<FadingDistribution> kinds = {
        FadingDistribution::rayleigh_power(2.0),
        FadingDistribution::lognormal(8.0),
        FadingDistribution::gamma(0.7, 2.0),
        FadingDistribution::gamma(3.0, 0.5),
        FadingDistribution::pareto(1.5, 1.0),
        FadingDistribution::composite_rayleigh_lognormal(8.0),
        FadingDistribution::truncated(FadingDistribution::lognormal(6.0), 50.0),
    };
    for (const FadingDistribution& f : kinds) {
        CAPTURE(f.describe());
        const double upper = std::isfinite(f.upper_support()) ? f.upper_support() : 0.0;
        QuadratureOptions opt;
        opt.rel_tol = 1e-9;
        double total;
        if (upper > 0.0) {
            total = integrate([&](double x) { return f.density(x); }, 0.0, upper, opt,
                              log_spaced_breaks(1e-6 * upper, upper))
                        .value;
        } else {
            total = integrate([&](double x) { return f.density(x); }, 0.0, 64.0, opt,
                              log_spaced_breaks(1e-8, 64.0))
                        .value +
                    integrate_to_infinity([&](double x) { return f.density(x); }, 64.0, opt).value;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("sampler means match analytic means") {
    const std::vector<FadingDistribution> kinds = {
        FadingDistribution::constant(2.5),
        FadingDistribution::rayleigh_power(2.0),
        FadingDistribution::lognormal(8.0),
        FadingDistribution::gamma(0.7, 2.0),
        FadingDistribution::pareto(4.0, 1.0),
        FadingDistribution::composite_rayleigh_lognormal(8.0),
        FadingDistribution::truncated(FadingDistribution::rayleigh_power(1.0), 4.0),
    };
    std::uint64_t seed = 100;
    for (const FadingDistribution& f : kinds) {
        CAPTURE(f.describe());
        const std::vector<double> x = draw(f, 1000000, seed++);
        const MeanVariance mv = mean_variance(x);
        CHECK(std::abs(mv.mean - f.mean()) < 4.0 * std::max(mv.std_error, 1e-12));
    }
}

TEST_CASE("samplers and CCDFs agree in distribution") {
    struct Case {
        FadingDistribution f;
        std::size_t n;
        double tol;
    };
    const std::vector<Case> cases = {
        {FadingDistribution::composite_rayleigh_lognormal(8.0), 1000000, 0.01},
        {FadingDistribution::lognormal(8.0), 200000, 0.01},
        {FadingDistribution::gamma(0.7, 2.0), 200000, 0.01},
        {FadingDistribution::pareto(0.5, 1.0), 200000, 0.01},
        {FadingDistribution::truncated(FadingDistribution::lognormal(6.0), 50.0), 200000, 0.01},
    };
    std::uint64_t seed = 300;
    for (const Case& c : cases) {
        CAPTURE(c.f.describe());
        std::vector<double> x = draw(c.f, c.n, seed++);
        double lo = x[0], hi = x[0];
        for (double v : x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const CcdfTable table(c.f, std::max(lo * 0.5, 1e-300), hi * 2.0, 3000);
        const double ks = ks_distance(x, [&](double v) { return 1.0 - table(v); });
        CHECK(ks < c.tol);
    }
}

TEST_CASE("truncated moments: closed forms, quadrature and additivity") {
    const double inf = std::numeric_limits<double>::infinity();

    // atom
    const FadingDistribution c = FadingDistribution::constant(3.0);
    CHECK(c.truncated_moment(2.0, 0.0, inf) == doctest::Approx(9.0));
    CHECK(c.truncated_moment(2.0, 0.0, 3.0) == doctest::Approx(0.0));
    CHECK(c.truncated_moment(2.0, 3.0, inf) == doctest::Approx(9.0));

    // heavy-tail mean, frozen from the scale/(index-1) law
    const FadingDistribution p4 = FadingDistribution::pareto(4.0, 1.0);
    CHECK(p4.truncated_moment(1.0, 0.0, inf) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(p4.mean() == doctest::Approx(1.0 / 3.0));

    // infinite-mean signal
    const FadingDistribution p05 = FadingDistribution::pareto(0.5, 1.0);
    CHECK_THROWS_AS(p05.truncated_moment(1.0, 0.0, inf), DivergenceError);
    CHECK(std::isinf(p05.mean()));

    // closed form vs direct density quadrature on a window
    const double direct =
        integrate([&](double x) { return std::sqrt(x) * p4.density(x); }, 0.5, 40.0, {},
                  log_spaced_breaks(0.5, 40.0))
            .value;
    CHECK(p4.truncated_moment(0.5, 0.5, 40.0) == doctest::Approx(direct).epsilon(1e-8));

    // resonant exponent: finite on a window, log-divergent to infinity
    const double log_window = p05.truncated_moment(0.5, 2.0, 2000.0);
    CHECK(log_window > 0.0);
    CHECK(p05.truncated_moment(0.5, 2.0, 2e6) > log_window);
    CHECK_THROWS_AS(p05.truncated_moment(0.5, 2.0, inf), DivergenceError);

    // additivity across a split point, all kinds with a density
    const std::vector<FadingDistribution> kinds = {
        FadingDistribution::rayleigh_power(2.0),
        FadingDistribution::lognormal(8.0),
        FadingDistribution::gamma(0.7, 2.0),
        FadingDistribution::pareto(4.0, 1.0),
        FadingDistribution::composite_rayleigh_lognormal(8.0),
        FadingDistribution::truncated(FadingDistribution::rayleigh_power(1.0), 4.0),
    };
    for (const FadingDistribution& f : kinds) {
        CAPTURE(f.describe());
        for (double p : {0.0, 0.5, 1.3}) {
            const double whole = f.truncated_moment(p, 0.0, inf);
            const double split = f.mean();
            const double sum =
                f.truncated_moment(p, 0.0, split) + f.truncated_moment(p, split, inf);
            CHECK(sum == doctest::Approx(whole).epsilon(1e-7));
        }
    }
}

TEST_CASE("composite moment route agrees with direct density quadrature") {
    const FadingDistribution f = FadingDistribution::composite_rayleigh_lognormal(8.0);
    for (const auto& [p, lo, hi] : std::vector<std::tuple<double, double, double>>{
             {0.5, 0.0, 10.0}, {1.5, 2.0, 300.0}, {0.66, 1.0, 1e6}}) {
        const double via_identity = f.truncated_moment(p, lo, hi);
        const double direct =
            integrate([&, pp = p](double x) { return std::pow(x, pp) * f.density(x); },
                      std::max(lo, 1e-12), hi, {}, log_spaced_breaks(std::max(lo, 1e-6), hi, 2))
                .value;
        CHECK(via_identity == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("truncation keeps mass and support in range") {
    const FadingDistribution base = FadingDistribution::rayleigh_power(1.0);
    const FadingDistribution t = FadingDistribution::truncated(base, 2.0);
    CHECK(t.upper_support() == doctest::Approx(2.0));
    CHECK(t.ccdf(2.0) == doctest::Approx(0.0));
    CHECK(t.ccdf(0.0) == doctest::Approx(1.0));
    RandomStream rng(55, 0x74, 0, 0);
    for (int i = 0; i < 2000; ++i) {
        CHECK(t.sample(rng) <= 2.0);
    }
    CHECK_THROWS_AS(FadingDistribution::truncated(base, 1e-4), ValidationError);
    CHECK_THROWS_AS(FadingDistribution::truncated(t, 1.0), ValidationError);
    CHECK_THROWS_AS(FadingDistribution::pareto(-1.0), ValidationError);
}
