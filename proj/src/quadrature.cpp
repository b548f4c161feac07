#include "udn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "udn/errors.hpp"

namespace udn {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. Standard QUADPACK constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = f(center);
    double result_gauss = kWg[3] * f_center;
    double result_kronrod = kWgk[7] * f_center;
    double f_values[15];
    f_values[14] = f_center;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f_lo = f(center - dx);
        const double f_hi = f(center + dx);
        f_values[2 * j] = f_lo;
        f_values[2 * j + 1] = f_hi;
        result_kronrod += kWgk[j] * (f_lo + f_hi);
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * (f_lo + f_hi);
        }
    }

    const double mean = result_kronrod * 0.5;
    double resasc = kWgk[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f_values[2 * j] - mean) + std::abs(f_values[2 * j + 1] - mean));
    }
    resasc *= std::abs(half);

    const double raw = std::abs(result_kronrod - result_gauss) * std::abs(half);
    double error = raw;
    if (resasc != 0.0 && raw != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * raw / resasc, 1.5));
    }
    if (!std::isfinite(result_kronrod)) {
        throw NumericError("integrand returned a non-finite value");
    }
    return Panel{a, b, result_kronrod * std::abs(half) * (b >= a ? 1.0 : -1.0), error};
}

}  // namespace

std::vector<double> log_spaced_breaks(double lo, double hi, int per_decade) {
    std::vector<double> breaks;
    if (!(lo > 0.0) || !(hi > lo)) {
        return breaks;
    }
    const double step = std::log(10.0) / per_decade;
    for (double x = std::log(lo) + step; x < std::log(hi) - 0.5 * step; x += step) {
        breaks.push_back(std::exp(x));
    }
    return breaks;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opt, const std::vector<double>& breaks) {
    if (a == b) {
        return {0.0, 0.0};
    }

    std::vector<double> edges{a};
    for (double x : breaks) {
        if (x > a && x < b) {
            edges.push_back(x);
        }
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double total_error = 0.0;
    int n_panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        total_error += p.error;
        panels.push(p);
        ++n_panels;
    }

    while (n_panels < opt.max_panels && !panels.empty()) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (total_error <= target) {
            break;
        }
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision; accept it.
            total_error -= worst.error;
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++n_panels;
    }

    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_error > target * 50.0 && total_error > opt.abs_tol) {
        throw NumericError("quadrature failed to converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]: error " + std::to_string(total_error));
    }
    return {total, total_error};
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& opt) {
    double lo = a;
    double hi = (a > 0.0) ? 2.0 * a : 1.0;
    double total = 0.0;
    double total_error = 0.0;
    double prev_abs = -1.0;
    int quiet_panels = 0;

    QuadratureOptions panel_opt = opt;
    for (int k = 0; k < 400; ++k) {
        panel_opt.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::abs(total));
        QuadratureResult part = integrate(f, lo, hi, panel_opt);
        total += part.value;
        total_error += part.error;

        const double mag = std::abs(part.value);
        const double scale = std::max(std::abs(total), opt.abs_tol);
        if (mag <= opt.rel_tol * scale) {
            ++quiet_panels;
            if (quiet_panels >= 2) {
                return {total, total_error + mag};
            }
        } else {
            quiet_panels = 0;
        }
        if (prev_abs >= 0.0 && mag > 0.0) {
            const double ratio = mag / std::max(prev_abs, 1e-300);
            if (k > 30 && ratio > 0.999) {
                throw DivergenceError("integral over [" + std::to_string(a) +
                                      ", inf) shows no decay; it likely diverges");
            }
        }
        prev_abs = mag;
        lo = hi;
        hi *= 2.0;
    }
    throw DivergenceError("integral over [" + std::to_string(a) +
                          ", inf) did not settle after 400 doubling panels");
}

}  // namespace udn
