#pragma once

#include <functional>
#include <vector>

namespace udn {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 4000;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval. `breaks` seeds extra
// panel boundaries inside (a,b); out-of-range entries are ignored.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt = {},
                           const std::vector<double>& breaks = {});

// Integrates f over [a, infinity) by geometrically growing panels. The
// integrand must eventually decay; if panel contributions stop shrinking a
// DivergenceError is raised.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& opt = {});

// Panel boundaries at powers of ten between lo and hi (exclusive), useful
// when the integrand mass is spread over many decades.
std::vector<double> log_spaced_breaks(double lo, double hi, int per_decade = 1);

}  // namespace udn
