// Command line front end: validate configs, run single-density simulations,
// tail curves, density sweeps and regime classification. CSV in/out contracts
// are documented in the README.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "udn/config.hpp"
#include "udn/csv.hpp"
#include "udn/errors.hpp"
#include "udn/experiments.hpp"
#include "udn/sinr.hpp"
#include "udn/tail.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> workers_override;
};

udn::ExperimentConfig resolve_config(const GlobalArgs& args) {
    if (args.config_path.empty() == args.preset.empty()) {
        throw udn::ValidationError("pass exactly one of --config or --preset");
    }
    udn::ExperimentConfig cfg = args.config_path.empty() ? udn::load_preset(args.preset)
                                                         : udn::load_config(args.config_path);
    if (args.seed_override) {
        cfg.seed = *args.seed_override;
    }
    if (args.workers_override) {
        cfg.workers = *args.workers_override;
    } else if (const char* env = std::getenv("UDN_WORKERS")) {
        cfg.workers = std::atoi(env);
    }
    return cfg;
}

int run_validate(const GlobalArgs& args) {
    const udn::ExperimentConfig cfg = resolve_config(args);
    (void)cfg.sim_config();
    std::cout << cfg.echo();
    std::cerr << "config ok, fingerprint " << cfg.fingerprint() << "\n";
    return 0;
}

int run_simulate(const GlobalArgs& args, double lambda_per_km2, const std::string& out,
                 const std::string& capacity_out) {
    const udn::ExperimentConfig cfg = resolve_config(args);
    const udn::SimConfig sim = cfg.sim_config();
    const double lambda = lambda_per_km2 * 1e-6;

    const std::vector<double> sinr = udn::simulate_batch(sim, lambda);
    const udn::CoverageCurve curve =
        udn::coverage_from_samples(sinr, cfg.y_grid, lambda, sim.seed);
    const udn::CapacityEstimate capacity = udn::capacity_from_samples(sinr, lambda);

    std::ostringstream cov;
    udn::write_coverage_csv(cov, std::span(&curve, 1));
    if (out.empty()) {
        std::cout << cov.str();
    } else {
        udn::write_file(out, cov.str());
    }
    if (!capacity_out.empty()) {
        std::ostringstream cap;
        udn::write_capacity_csv(cap, std::span(&capacity, 1));
        udn::write_file(capacity_out, cap.str());
    }
    std::cerr << "lambda " << lambda_per_km2 << "/km2: coverage(y_ref=" << cfg.y_ref << ") = ";
    for (std::size_t j = 0; j < curve.y_grid.size(); ++j) {
        if (std::abs(curve.y_grid[j] - cfg.y_ref) <= 1e-9 * cfg.y_ref) {
            std::cerr << curve.p_hat[j] << " +- " << curve.ci_halfwidth[j];
        }
    }
    std::cerr << ", capacity = " << capacity.c_hat << " +- " << capacity.std_err
              << (capacity.diverged ? " (diverged realizations present)" : "") << "\n";
    return 0;
}

int run_tail(const GlobalArgs& args, std::size_t samples, int grid_points,
             const std::string& out, bool want_asymptotic) {
    const udn::ExperimentConfig cfg = resolve_config(args);
    const udn::NetworkDomain domain = cfg.domain();
    const udn::PathLossModel model = cfg.pathloss();

    const std::vector<double> powers =
        udn::sample_received_power_batch(model, cfg.fading, domain, samples, cfg.seed,
                                         cfg.workers);

    // Threshold grid spanning the sample range.
    double lo = powers[0], hi = powers[0];
    for (double p : powers) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    lo = std::max(lo, 1e-300);
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i) {
        const double f = static_cast<double>(i) / (grid_points - 1);
        grid.push_back(std::exp((1.0 - f) * std::log(lo) + f * std::log(hi)));
    }

    const udn::TailCurve analytic = udn::analytic_tail_curve(grid, model, cfg.fading, domain);
    const udn::TailCurve empirical = udn::empirical_ccdf(powers, grid);

    std::optional<udn::TailCurve> asymptotic;
    if (want_asymptotic) {
        udn::TailCurve curve;
        curve.provenance = udn::CurveProvenance::Asymptotic;
        curve.thresholds = grid;
        for (double t : grid) {
            curve.ccdf.push_back(udn::asymptotic_tail_p(t, model, cfg.fading, domain));
        }
        asymptotic = std::move(curve);
    }

    std::ostringstream os;
    udn::write_tail_csv(os, analytic, empirical, asymptotic ? &*asymptotic : nullptr);
    if (out.empty()) {
        std::cout << os.str();
    } else {
        udn::write_file(out, os.str());
    }
    return 0;
}

udn::SweepResult sweep_from_config(const udn::ExperimentConfig& cfg) {
    const udn::SimConfig sim = cfg.sim_config();
    return udn::run_sweep(sim, cfg.lambdas_per_m(), cfg.y_grid, cfg.fingerprint());
}

int run_sweep_cmd(const GlobalArgs& args, const std::string& out, const std::string& capacity_out) {
    const udn::ExperimentConfig cfg = resolve_config(args);
    const udn::SweepResult sweep = sweep_from_config(cfg);

    std::ostringstream cov;
    udn::write_sweep_coverage_csv(cov, sweep);
    if (out.empty()) {
        std::cout << cov.str();
    } else {
        udn::write_file(out, cov.str());
    }
    if (!capacity_out.empty()) {
        std::ostringstream cap;
        udn::write_sweep_capacity_csv(cap, sweep);
        udn::write_file(capacity_out, cap.str());
    }
    for (const udn::SweepPoint& pt : sweep.points) {
        if (pt.failed) {
            std::cerr << "point lambda=" << pt.lambda * 1e6 << "/km2 failed: " << pt.error << "\n";
        }
    }
    return 0;
}

int run_classify(const GlobalArgs& args, const std::string& out, const std::string& sweep_out,
                 bool refine) {
    const udn::ExperimentConfig cfg = resolve_config(args);
    const udn::SimConfig sim = cfg.sim_config();

    udn::RegimeReport report;
    report.config_fingerprint = cfg.fingerprint();
    report.y_ref = cfg.y_ref;
    report.predicted = udn::predict_regime(sim.model, sim.fading, sim.domain);

    const udn::SweepResult sweep = udn::run_sweep(sim, cfg.lambdas_per_m(), cfg.y_grid,
                                                  report.config_fingerprint);
    const udn::ObservedClassification obs =
        udn::classify_observed(sweep, cfg.y_ref, cfg.classify_options());
    report.observed = obs.regime;
    report.u_ratio = obs.u_ratio;
    report.diagnostics = obs.diagnostics;
    if (refine && obs.regime == udn::Regime::InverseU) {
        report.optima = udn::find_optimal_density(sweep, sim, cfg.y_ref);
    }

    const std::string text = udn::format_regime_report(report);
    if (out.empty()) {
        std::cout << text;
    } else {
        udn::write_file(out, text);
    }
    if (!sweep_out.empty()) {
        std::ostringstream cov;
        udn::write_sweep_coverage_csv(cov, sweep);
        udn::write_file(sweep_out, cov.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson-field downlink network simulator and tail analyzer"};
    app.require_subcommand(1);

    GlobalArgs globals;
    app.add_option("--config", globals.config_path, "config file path")->expected(1);
    app.add_option("--preset", globals.preset, "built-in preset name")->expected(1);
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");
    int workers_value = 0;
    auto* workers_opt =
        app.add_option("--workers", workers_value, "worker threads (default: UDN_WORKERS or all)");

    auto* validate = app.add_subcommand("validate", "parse, validate and echo the config");

    auto* simulate = app.add_subcommand("simulate", "coverage and capacity at one density");
    double lambda_per_km2 = 0.0;
    simulate->add_option("--lambda-per-km2", lambda_per_km2, "node density")->required();
    std::string sim_out, sim_capacity_out;
    simulate->add_option("--out", sim_out, "coverage CSV path (default: stdout)");
    simulate->add_option("--capacity-out", sim_capacity_out, "capacity CSV path");

    auto* tail = app.add_subcommand("tail", "single-node power tail: analytic vs empirical");
    std::size_t tail_samples = 1000000;
    int tail_grid = 120;
    std::string tail_out;
    bool tail_asymptotic = false;
    tail->add_option("--samples", tail_samples, "number of power draws");
    tail->add_option("--grid-points", tail_grid, "threshold grid size");
    tail->add_option("--out", tail_out, "CSV path (default: stdout)");
    tail->add_flag("--asymptotic", tail_asymptotic, "include the deep-tail closed form column");

    auto* sweep = app.add_subcommand("sweep", "coverage/capacity across the density grid");
    std::string sweep_out, sweep_capacity_out;
    sweep->add_option("--out", sweep_out, "coverage CSV path (default: stdout)");
    sweep->add_option("--capacity-out", sweep_capacity_out, "capacity CSV path");

    auto* classify = app.add_subcommand("classify", "predict and measure the scaling regime");
    std::string classify_out, classify_sweep_out;
    bool refine = false;
    classify->add_option("--out", classify_out, "report path (default: stdout)");
    classify->add_option("--sweep-out", classify_sweep_out, "also write the sweep CSV");
    classify->add_flag("--refine", refine, "golden-section refinement of the optimal density");

    try {
        app.parse(argc, argv);
        if (*seed_opt) globals.seed_override = seed_value;
        if (*workers_opt) globals.workers_override = workers_value;

        if (*validate) return run_validate(globals);
        if (*simulate) return run_simulate(globals, lambda_per_km2, sim_out, sim_capacity_out);
        if (*tail) return run_tail(globals, tail_samples, tail_grid, tail_out, tail_asymptotic);
        if (*sweep) return run_sweep_cmd(globals, sweep_out, sweep_capacity_out);
        if (*classify) return run_classify(globals, classify_out, classify_sweep_out, refine);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const udn::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
