#include "doctest.h"

#include <cmath>
#include <vector>

#include "udn/errors.hpp"
#include "udn/stats.hpp"
#include "udn/tail.hpp"

using namespace udn;

namespace {

const NetworkDomain kFigDomain(2, 40e3);

PathLossModel fig_model(double beta0) {
    return build_pathloss(1.0, {beta0, 4.0}, {10.0}, kFigDomain);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    }
    return g;
}

}  // namespace

TEST_CASE("single slope with constant fading has an elementary tail") {
    // One power-law slope and a point-mass fading: the tail is just the
    // probability that the node sits inside the matching disc.
    const NetworkDomain domain(2, 1000.0);
    const PathLossModel model = build_pathloss(2.0, {4.0}, {}, domain);
    const double c = 3.0;
    const FadingDistribution fading = FadingDistribution::constant(c);

    const double t_min = c / (2.0 * std::pow(1000.0, 4.0));
    for (double t : log_grid(t_min * 1.001, t_min * 1e9, 40)) {
        const double radius = std::pow(c / (2.0 * t), 0.25);
        const double expected = std::pow(radius / 1000.0, 2.0);
        CHECK(analytic_tail_p(t, model, fading, domain) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    // below the smallest supported threshold every node qualifies
    CHECK(analytic_tail_p(t_min * 0.5, model, fading, domain) == doctest::Approx(1.0));
}

TEST_CASE("bounded models saturate to one as the threshold vanishes") {
    const PathLossModel model = fig_model(0.0);
    const FadingDistribution fading = FadingDistribution::pareto(4.0, 1.0);
    CHECK(analytic_tail_p(1e-12, model, fading, kFigDomain) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analytic tails are monotone and inside [0,1] over eight decades") {
    struct Case {
        PathLossModel model;
        FadingDistribution fading;
    };
    const std::vector<Case> cases = {
        {fig_model(3.0), FadingDistribution::composite_rayleigh_lognormal(8.0)},
        {fig_model(0.0), FadingDistribution::pareto(0.5, 1.0)},
        {fig_model(1.0), FadingDistribution::composite_rayleigh_lognormal(8.0)},
        {fig_model(0.0), FadingDistribution::pareto(4.0, 1.0)},
        {fig_model(0.0), FadingDistribution::composite_rayleigh_lognormal(8.0)},
    };
    for (const Case& c : cases) {
        CAPTURE(c.fading.describe());
        double prev = 1.0 + 1e-12;
        for (double t : log_grid(1e-6, 1e2, 65)) {
            const double tail = analytic_tail_p(t, c.model, c.fading, kFigDomain);
            CHECK(tail >= 0.0);
            CHECK(tail <= 1.0);
            CHECK(tail <= prev * (1.0 + 1e-9));
            prev = tail;
        }
    }
}

TEST_CASE("interpolation table reproduces the exact tail") {
    const PathLossModel model = fig_model(1.0);
    const FadingDistribution fading = FadingDistribution::composite_rayleigh_lognormal(8.0);
    const TailTable table(model, fading, kFigDomain, 1e-8, 1e3);
    RandomStream rng(3, 9, 0, 0);
    for (int i = 0; i < 40; ++i) {
        const double t = std::exp(std::log(1e-8) + rng.next_uniform() * std::log(1e11));
        const double exact = analytic_tail_p(t, model, fading, kFigDomain);
        if (exact > 1e-12) {
            CHECK(table(t) == doctest::Approx(exact).epsilon(2e-4));
        }
    }
}

TEST_CASE("monte carlo draws reproduce the analytic tail") {
    const PathLossModel model = fig_model(0.0);
    const FadingDistribution fading = FadingDistribution::pareto(0.5, 1.0);
    const std::vector<double> powers =
        sample_received_power_batch(model, fading, kFigDomain, 1000000, 777);

    double lo = powers[0], hi = powers[0];
    for (double p : powers) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    const TailTable table(model, fading, kFigDomain, lo * 0.5, hi * 2.0);
    const double ks = ks_distance(powers, [&](double t) { return 1.0 - table(t); });
    CHECK(ks < 0.005);
}

TEST_CASE("power tail classification composes path loss and fading") {
    const TailClass rv05 = classify_received_power(fig_model(0.0), FadingDistribution::pareto(0.5));
    CHECK(rv05.kind == TailKind::RegularlyVarying);
    CHECK(rv05.index == doctest::Approx(0.5));

    const TailClass rv4 = classify_received_power(fig_model(0.0), FadingDistribution::pareto(4.0));
    CHECK(rv4.index == doctest::Approx(4.0));

    const TailClass steep = classify_received_power(
        fig_model(3.0), FadingDistribution::composite_rayleigh_lognormal(8.0));
    CHECK(steep.kind == TailKind::RegularlyVarying);
    CHECK(steep.index == doctest::Approx(2.0 / 3.0));

    const TailClass mild = classify_received_power(
        fig_model(1.0), FadingDistribution::composite_rayleigh_lognormal(8.0));
    CHECK(mild.index == doctest::Approx(2.0));

    // singular near field clips a heavy fading index
    const TailClass clipped = classify_received_power(fig_model(1.0),
                                                      FadingDistribution::pareto(0.5));
    CHECK(clipped.index == doctest::Approx(0.5));
    const TailClass clipped2 = classify_received_power(fig_model(1.0),
                                                       FadingDistribution::pareto(4.0));
    CHECK(clipped2.index == doctest::Approx(2.0));

    // bounded near field passes lighter classes through unchanged
    const TailClass rapid = classify_received_power(
        fig_model(0.0), FadingDistribution::composite_rayleigh_lognormal(8.0));
    CHECK(rapid.kind == TailKind::RapidlyVarying);
    const TailClass lighter =
        classify_received_power(fig_model(0.0), FadingDistribution::constant(1.0));
    CHECK(lighter.kind == TailKind::LighterThanRapid);
}

TEST_CASE("deep-tail closed form approaches the exact tail in all three branches") {
    struct Branch {
        PathLossModel model;
        FadingDistribution fading;
        const char* name;
    };
    const std::vector<Branch> branches = {
        {fig_model(0.0), FadingDistribution::pareto(4.0, 1.0), "bounded near field"},
        {fig_model(1.0), FadingDistribution::pareto(0.8, 1.0), "singular, fading dominates"},
        {fig_model(3.0), FadingDistribution::pareto(4.0, 1.0), "singular, path loss dominates"},
    };
    for (const Branch& b : branches) {
        CAPTURE(b.name);
        // pick a threshold deep enough that the exact tail is below 1e-4
        double t = 1.0;
        while (analytic_tail_p(t, b.model, b.fading, kFigDomain) > 1e-4) {
            t *= 4.0;
        }
        t *= 64.0;
        const double exact = analytic_tail_p(t, b.model, b.fading, kFigDomain);
        const double asym = asymptotic_tail_p(t, b.model, b.fading, kFigDomain);
        CHECK(asym / exact == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("resonant fading index is rejected") {
    // far-field slope gives d/beta_1 = 0.5, matching the fading index
    CHECK_THROWS_AS(
        asymptotic_tail_p(100.0, fig_model(0.0), FadingDistribution::pareto(0.5), kFigDomain),
        UnsupportedCaseError);
    CHECK_THROWS_AS(asymptotic_tail_p(
                        100.0, fig_model(0.0),
                        FadingDistribution::composite_rayleigh_lognormal(8.0), kFigDomain),
                    UnsupportedCaseError);
}

TEST_CASE("hill estimator recovers exact power-law indices") {
    // classical Pareto data: x = (1/u)^(1/alpha)
    RandomStream rng(99, 0x68, 0, 0);
    std::vector<double> x(1000000);
    for (double& v : x) v = std::pow(1.0 / rng.next_uniform(), 1.0 / 2.0);
    const HillEstimate est = hill_estimator(x, 0.01);
    CHECK(est.k == 10000);
    CHECK(est.alpha == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(est.alpha - 2.0) < 0.1);
    CHECK(est.std_error == doctest::Approx(est.alpha / 100.0));
}

TEST_CASE("hill estimator flags degenerate and undersized input") {
    const std::vector<double> flat(5000, 3.0);
    const HillEstimate est = hill_estimator(flat, 0.01);
    CHECK(std::isinf(est.alpha));
    const std::vector<double> tiny(100, 1.0);
    CHECK_THROWS_AS(hill_estimator(tiny, 0.01), ValidationError);
    CHECK_THROWS_AS(hill_estimator(flat, 0.5), ValidationError);
}

TEST_CASE("hill estimate on simulated power matches the predicted index") {
    const PathLossModel model = fig_model(1.0);
    const FadingDistribution fading = FadingDistribution::composite_rayleigh_lognormal(8.0);
    const std::vector<double> powers =
        sample_received_power_batch(model, fading, kFigDomain, 400000, 1234);
    const HillEstimate est = hill_estimator(powers, 0.001);
    CHECK(std::abs(est.alpha - 2.0) / 2.0 < 0.15);
}

TEST_CASE("empirical CCDF uses the strict convention") {
    const std::vector<double> samples = {1.0, 2.0, 3.0};
    const TailCurve curve = empirical_ccdf(samples, {0.5, 2.0, 3.0});
    CHECK(curve.ccdf[0] == doctest::Approx(1.0));
    CHECK(curve.ccdf[1] == doctest::Approx(1.0 / 3.0));
    CHECK(curve.ccdf[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(empirical_ccdf(std::vector<double>{}, {1.0}), ValidationError);
    CHECK_THROWS_AS(empirical_ccdf(samples, {2.0, 1.0}), ValidationError);
}
