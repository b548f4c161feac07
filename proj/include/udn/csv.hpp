#pragma once

#include <ostream>
#include <span>
#include <string>

#include "udn/experiments.hpp"
#include "udn/sinr.hpp"
#include "udn/tail.hpp"

namespace udn {

// CSV writers. Fixed column orders, full-precision scientific notation,
// deterministic bytes for fixed inputs. Densities are written per km^2,
// matching the config unit.

std::string format_number(double v);  // %.16e

void write_coverage_csv(std::ostream& os, std::span<const CoverageCurve> curves);
void write_capacity_csv(std::ostream& os, std::span<const CapacityEstimate> estimates);
void write_sweep_coverage_csv(std::ostream& os, const SweepResult& sweep);
void write_sweep_capacity_csv(std::ostream& os, const SweepResult& sweep);

// Columns t, analytic, empirical and optionally asymptotic; all curves must
// share the threshold grid of `analytic`.
void write_tail_csv(std::ostream& os, const TailCurve& analytic, const TailCurve& empirical,
                    const TailCurve* asymptotic = nullptr);

void write_file(const std::string& path, const std::string& contents);

}  // namespace udn
