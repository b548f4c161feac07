#include <map>
#include <string>
#include <vector>

#include "udn/config.hpp"
#include "udn/errors.hpp"

namespace udn {

namespace {

// Shared deployment: two slopes anchored at unit gain, far-field exponent 4,
// first breakpoint 10 m, 40 km outer radius, planar network, unit noise.
// The presets differ in the near-field exponent and the fading law.

const std::string kFig1a = R"(# steep near field, composite fading: coverage and capacity level off
domain {
  d = 2
  r_inf_km = 40
}
pathloss {
  a0 = 1
  exponents = 3, 4
  breakpoints_m = 10
}
fading {
  kind = composite
  sigma_db = 8
}
noise {
  w = 1
}
simulation {
  trials = 10000
  seed = 97001
  truncation = auto
}
sweep {
  lambda_per_km2 = logspace(1, 1e4, 12)
  y_grid = logspace(1e-3, 10, 10)
  y_ref = 1
}
)";

const std::string kFig1b = R"(# bounded loss, very heavy Pareto fading: coverage and capacity level off
domain {
  d = 2
  r_inf_km = 40
}
pathloss {
  a0 = 1
  exponents = 0, 4
  breakpoints_m = 10
}
fading {
  kind = pareto
  alpha = 0.5
  sigma = 1
}
noise {
  w = 1
}
simulation {
  trials = 10000
  seed = 97002
  truncation = auto
}
sweep {
  lambda_per_km2 = logspace(1e-2, 1e2, 12)
  y_grid = logspace(1e-3, 10, 10)
  y_ref = 1
}
)";

const std::string kFig2a = R"(# mild near field, composite fading: coverage peaks then collapses
domain {
  d = 2
  r_inf_km = 40
}
pathloss {
  a0 = 1
  exponents = 1, 4
  breakpoints_m = 10
}
fading {
  kind = composite
  sigma_db = 8
}
noise {
  w = 1
}
simulation {
  trials = 10000
  seed = 97003
  truncation = auto
}
sweep {
  lambda_per_km2 = logspace(1, 1e4, 12)
  y_grid = logspace(1e-3, 10, 10)
  y_ref = 1
}
)";

const std::string kFig2b = R"(# bounded loss, light Pareto fading: coverage peaks then collapses
domain {
  d = 2
  r_inf_km = 40
}
pathloss {
  a0 = 1
  exponents = 0, 4
  breakpoints_m = 10
}
fading {
  kind = pareto
  alpha = 4
  sigma = 1
}
noise {
  w = 1
}
simulation {
  trials = 10000
  seed = 97004
  truncation = auto
}
sweep {
  lambda_per_km2 = logspace(1, 1e4, 12)
  y_grid = logspace(1e-3, 10, 10)
  y_ref = 1
}
)";

const std::string kFig5 = R"(# bounded loss, composite fading: coverage peaks then collapses
domain {
  d = 2
  r_inf_km = 40
}
pathloss {
  a0 = 1
  exponents = 0, 4
  breakpoints_m = 10
}
fading {
  kind = composite
  sigma_db = 8
}
noise {
  w = 1
}
simulation {
  trials = 10000
  seed = 97005
  truncation = auto
}
sweep {
  lambda_per_km2 = logspace(1, 1e4, 12)
  y_grid = logspace(1e-3, 10, 10)
  y_ref = 1
}
)";

const std::map<std::string, const std::string*>& preset_map() {
    static const std::map<std::string, const std::string*> presets = {
        {"fig1a", &kFig1a}, {"fig1b", &kFig1b}, {"fig2a", &kFig2a},
        {"fig2b", &kFig2b}, {"fig5", &kFig5},
    };
    return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : preset_map()) {
        names.push_back(name);
    }
    return names;
}

const std::string& preset_text(const std::string& name) {
    const auto it = preset_map().find(name);
    if (it == preset_map().end()) {
        std::string known;
        for (const auto& [n, t] : preset_map()) {
            if (!known.empty()) known += ", ";
            known += n;
        }
        throw ValidationError("unknown preset '" + name + "' (available: " + known + ")");
    }
    return *it->second;
}

ExperimentConfig load_preset(const std::string& name) {
    return parse_config(preset_text(name), "preset:" + name);
}

}  // namespace udn
