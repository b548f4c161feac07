#pragma once

#include <vector>

#include "udn/geometry.hpp"

namespace udn {

// Piecewise power-law attenuation: l(r) = A_k * r^beta_k on [R_k, R_{k+1}),
// with the amplitudes chained so l is continuous across breakpoints. The
// near-field exponent beta_0 controls boundedness: l(0) is finite iff
// beta_0 = 0.
struct PathLossModel {
    int slope_count = 0;                  // K
    int d = 2;                            // dimension the model was validated against
    std::vector<double> breakpoints;      // R_0..R_K, R_0 = 0, R_K = domain radius
    std::vector<double> exponents;        // beta_0..beta_{K-1}
    std::vector<double> amplitudes;       // A_0..A_{K-1}
    std::vector<double> log_amplitudes;   // ln A_k; amplitude chaining happens here

    // d / beta_k, with the convention alpha_0 = +inf when beta_0 = 0.
    double alpha(int k) const;

    // Segment-boundary power coefficients: a_0 = A_0 * R_0^beta_0 (A_0 when
    // beta_0 = 0, else 0), a_k = A_k * R_k^beta_k for 1 <= k < K, and
    // a_K = A_{K-1} * R_K^beta_{K-1}.
    double tail_coeff(int k) const;
};

// Derives amplitudes A_1.. from the anchor A_0 and validates every
// structural constraint. `interior_breakpoints` lists R_1..R_{K-1}; the
// endpoints 0 and domain.r_inf are implicit.
PathLossModel build_pathloss(double a0, const std::vector<double>& exponents,
                             const std::vector<double>& interior_breakpoints,
                             const NetworkDomain& domain);

// l(r). Throws std::domain_error outside [0, R_K].
double eval_pathloss(const PathLossModel& model, double r);

bool is_bounded(const PathLossModel& model);
bool is_physical(const PathLossModel& model);

// Evaluation helper for hot loops: resolves small integer exponents to
// multiply chains and keeps the per-segment constants in a flat layout.
class PathLossEvaluator {
public:
    explicit PathLossEvaluator(const PathLossModel& model);
    double operator()(double r) const;

private:
    struct Segment {
        double upper;      // R_{k+1}
        double amplitude;  // A_k
        double beta;
        int int_beta;      // exponent as a small integer, or -1
    };
    std::vector<Segment> segments_;
};

}  // namespace udn
