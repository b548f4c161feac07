#include "udn/csv.hpp"

#include <cstdio>
#include <fstream>

#include "udn/errors.hpp"

namespace udn {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

void write_coverage_rows(std::ostream& os, const CoverageCurve& curve) {
    for (std::size_t j = 0; j < curve.y_grid.size(); ++j) {
        os << format_number(curve.lambda * 1e6) << ',' << format_number(curve.y_grid[j]) << ','
           << format_number(curve.p_hat[j]) << ',' << format_number(curve.ci_halfwidth[j]) << ','
           << curve.trials << ',' << curve.seed << '\n';
    }
}

}  // namespace

void write_coverage_csv(std::ostream& os, std::span<const CoverageCurve> curves) {
    os << "lambda,y,p_hat,ci,trials,seed\n";
    for (const CoverageCurve& curve : curves) {
        write_coverage_rows(os, curve);
    }
}

void write_capacity_csv(std::ostream& os, std::span<const CapacityEstimate> estimates) {
    os << "lambda,c_hat,std_err,diverged\n";
    for (const CapacityEstimate& est : estimates) {
        os << format_number(est.lambda * 1e6) << ',' << format_number(est.c_hat) << ','
           << format_number(est.std_err) << ',' << (est.diverged ? 1 : 0) << '\n';
    }
}

void write_sweep_coverage_csv(std::ostream& os, const SweepResult& sweep) {
    os << "lambda,y,p_hat,ci,trials,seed\n";
    for (const SweepPoint& point : sweep.points) {
        if (point.failed) continue;
        write_coverage_rows(os, point.coverage);
    }
}

void write_sweep_capacity_csv(std::ostream& os, const SweepResult& sweep) {
    os << "lambda,c_hat,std_err,diverged\n";
    for (const SweepPoint& point : sweep.points) {
        if (point.failed) continue;
        const CapacityEstimate& est = point.capacity;
        os << format_number(est.lambda * 1e6) << ',' << format_number(est.c_hat) << ','
           << format_number(est.std_err) << ',' << (est.diverged ? 1 : 0) << '\n';
    }
}

void write_tail_csv(std::ostream& os, const TailCurve& analytic, const TailCurve& empirical,
                    const TailCurve* asymptotic) {
    if (analytic.thresholds != empirical.thresholds ||
        (asymptotic && asymptotic->thresholds != analytic.thresholds)) {
        throw ValidationError("tail curves must share one threshold grid");
    }
    os << (asymptotic ? "t,analytic,empirical,asymptotic\n" : "t,analytic,empirical\n");
    for (std::size_t i = 0; i < analytic.thresholds.size(); ++i) {
        os << format_number(analytic.thresholds[i]) << ',' << format_number(analytic.ccdf[i])
           << ',' << format_number(empirical.ccdf[i]);
        if (asymptotic) {
            os << ',' << format_number(asymptotic->ccdf[i]);
        }
        os << '\n';
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw NumericError("cannot open output file '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw NumericError("failed writing '" + path + "'");
    }
}

}  // namespace udn
