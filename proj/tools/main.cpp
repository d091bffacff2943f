// cbath: common-bath qubit ensemble laboratory.
//
// Subcommands:
//   run      - figure sweeps (fig1..fig5) written as deterministic CSV
//   scan-nc  - locate the qubit number where QFI decay turns oscillatory
//   validate - cross-route tolerance gate (exit 0 iff all tolerances hold)
//
// Exit codes: 0 success, 1 tolerance failure, 2 config error, 3 numerical error.

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbath/errors.hpp"
#include "cbath/experiments.hpp"
#include "cbath/model.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string n_list_text;
    std::string theta_list_text;
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw cbath::ConfigError("bad list entry '" + item + "'");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

void add_sweep_flags(CLI::App* sub, cbath::ExperimentConfig& cfg, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path, "flat key = value config file; flags win");
    sub->add_option("--gamma0", cfg.gamma0, "coupling ratio gamma0/lambda");
    sub->add_option("--omega0", cfg.omega0, "qubit frequency ratio omega0/lambda");
    sub->add_option("--n-list", flags.n_list_text, "comma-separated qubit numbers");
    sub->add_option("--theta-list", flags.theta_list_text, "comma-separated angles in [0, 2pi]");
    sub->add_option("--t-max", cfg.t_max, "time horizon, units of 1/lambda");
    sub->add_option("--n-samples", cfg.n_samples, "samples on the time or angle grid");
    sub->add_option("--ode-dt", cfg.ode_dt, "RK4 step for the memory-kernel solver");
    sub->add_option("--bath-modes", cfg.bath_modes, "discretized-bath mode count");
    sub->add_option("--bath-half-width", cfg.bath_half_width, "bath window half-width, units of lambda");
    sub->add_option("--bath-dt", cfg.bath_dt, "RK4 step for the discretized-bath oracle");
    sub->add_option("--k-steps", cfg.k_steps, "quadrature/trajectory steps (0 = auto)");
}

std::vector<std::string> locked_keys(const CLI::App* sub) {
    std::vector<std::string> keys;
    for (const auto* opt : sub->get_options()) {
        if (opt->count() == 0) continue;
        std::string name = opt->get_name();  // e.g. "--n-list"
        if (name.rfind("--", 0) == 0) name = name.substr(2);
        keys.push_back(name);
    }
    return keys;
}

void finalize(cbath::ExperimentConfig& cfg, const CLI::App* sub, const CommonFlags& flags) {
    if (!flags.config_path.empty()) cbath::load_config_file(flags.config_path, cfg, locked_keys(sub));
    if (!flags.n_list_text.empty()) cfg.n_list = parse_int_list(flags.n_list_text);
    if (!flags.theta_list_text.empty()) cfg.theta_list = parse_double_list(flags.theta_list_text);
    // negative values mean "use the default" internally, so explicitly passed
    // non-positive values must be rejected here
    if (sub->count("--gamma0") > 0 && !(cfg.gamma0 > 0.0))
        throw cbath::ConfigError("gamma0 must be positive");
    if (sub->count("--t-max") > 0 && !(cfg.t_max > 0.0))
        throw cbath::ConfigError("t_max must be positive");
    if (sub->count("--n-samples") > 0 && cfg.n_samples < 2)
        throw cbath::ConfigError("n_samples must be >= 2");
    cfg.validate();
}

int run_figures(cbath::ExperimentConfig cfg, const CLI::App* sub, const CommonFlags& flags) {
    finalize(cfg, sub, flags);
    if (cfg.out.empty()) cfg.out = cfg.experiment + ".csv";
    const cbath::SweepTable table = cbath::run_experiment(cfg);
    cbath::write_csv(table, cfg.out);
    std::cout << "wrote " << table.rows.size() << " rows to " << cfg.out << '\n'
              << "# " << table.config_comment << '\n';
    return 0;
}

int run_scan(cbath::ExperimentConfig cfg, const CLI::App* sub, const CommonFlags& flags) {
    cfg.experiment = "nc-scan";
    finalize(cfg, sub, flags);
    const double gamma0 = cfg.gamma0 > 0.0 ? cfg.gamma0 : 0.05;
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 50.0;
    const int samples = cfg.n_samples > 1 ? cfg.n_samples : 2000;

    const cbath::ReservoirSpec spec{gamma0, 1.0, cfg.omega0};
    const int predicted = cbath::critical_qubit_number(spec);
    const auto onset = cbath::detect_oscillation_onset(gamma0, cfg.n_max, t_max, samples);

    std::cout << "gamma0 = " << gamma0 << " (" << cbath::to_string(cbath::classify_regime(spec))
              << ")\n"
              << "critical number floor(lambda/(2 gamma0)) + 1 = " << predicted << '\n';
    if (onset)
        std::cout << "oscillation onset from sampled QFI dynamics: N = " << *onset << '\n'
                  << "agreement: " << (*onset == predicted ? "yes" : "NO") << '\n';
    else
        std::cout << "oscillation onset from sampled QFI dynamics: none up to N = " << cfg.n_max
                  << '\n';
    return 0;
}

int run_validate(cbath::ExperimentConfig cfg, const CLI::App* sub, const CommonFlags& flags) {
    cfg.experiment = "validate";
    finalize(cfg, sub, flags);
    const cbath::ValidationReport report = cbath::run_validation(cfg);
    cbath::print_criteria(std::cout, report.results);
    if (!report.all_pass) {
        std::cout << "FIRST VIOLATED TOLERANCE: " << report.first_failure << '\n';
        return 1;
    }
    std::cout << "all tolerances hold (" << report.results.size() << " checks, grid=" << cfg.grid
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"common-bath qubit ensemble laboratory: survival amplitude, phase-estimation QFI, geometric phase"};
    app.require_subcommand(1);

    cbath::ExperimentConfig run_cfg, scan_cfg, validate_cfg;
    CommonFlags run_flags, scan_flags, validate_flags;

    CLI::App* run = app.add_subcommand("run", "run a figure sweep and write CSV");
    run->add_option("--experiment", run_cfg.experiment, "fig1 | fig2 | fig3 | fig4 | fig5");
    run->add_option("--out", run_cfg.out, "output CSV path (default <experiment>.csv)");
    add_sweep_flags(run, run_cfg, run_flags);

    CLI::App* scan = app.add_subcommand("scan-nc", "scan N for the onset of QFI oscillations");
    scan->add_option("--n-max", scan_cfg.n_max, "largest N to scan");
    add_sweep_flags(scan, scan_cfg, scan_flags);

    CLI::App* validate = app.add_subcommand("validate", "run the cross-route tolerance gate");
    validate->add_option("--grid", validate_cfg.grid, "default | smoke");
    add_sweep_flags(validate, validate_cfg, validate_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_figures(run_cfg, run, run_flags);
        if (scan->parsed()) return run_scan(scan_cfg, scan, scan_flags);
        return run_validate(validate_cfg, validate, validate_flags);
    } catch (const cbath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const cbath::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
