#pragma once
// experiments.hpp: declarative sweep runner behind the CLI. Produces
// deterministic CSV tables for the standard figures, the oscillation-onset
// scan, and the cross-route validation report.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbath/acceptance.hpp"

namespace cbath {

/// Sweep description. Negative / empty fields mean "use the experiment's
/// documented default".
struct ExperimentConfig {
    std::string experiment;  ///< fig1 | fig2 | fig3 | fig4 | fig5 | nc-scan | validate
    double gamma0 = -1.0;    ///< coupling ratio gamma0/lambda
    double omega0 = 5.0;     ///< qubit frequency ratio omega0/lambda
    std::vector<int> n_list;
    std::vector<double> theta_list;
    double t_max = -1.0;
    int n_samples = -1;
    double ode_dt = 2.5e-3;
    int bath_modes = 4000;
    double bath_half_width = 50.0;
    double bath_dt = 5e-4;
    int k_steps = 0;  ///< 0: choose per parameter point
    int n_max = 20;   ///< nc-scan upper bound
    std::string grid = "default";  ///< validate: default | smoke
    std::string out;

    void validate() const;  ///< throws ConfigError
};

/// Apply `key = value` lines from a flat config file. Keys use the CLI flag
/// spelling (gamma0, n-list, t-max, ...). Keys listed in locked_keys (already
/// set on the command line) are left untouched: flags win.
void load_config_file(const std::string& path, ExperimentConfig& cfg,
                      const std::vector<std::string>& locked_keys);

/// One row per parameter tuple, cells preformatted ('.' decimal, 17
/// significant digits), ordered lexicographically in declared column order.
struct SweepTable {
    std::string config_comment;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Runs a figure sweep (fig1..fig5). Rows may be computed concurrently
/// (CBATH_WORKERS); the output is byte-identical regardless.
SweepTable run_experiment(const ExperimentConfig& cfg);

void write_csv(const SweepTable& table, std::ostream& os);
void write_csv(const SweepTable& table, const std::string& path);

std::string format_cell(double v);

/// Smallest N in [1, n_max] whose sampled QFI(t) on [0, t_max] shows a strict
/// rise after a strict fall (noise guard 1e-10); nullopt when every scanned N
/// decays monotonically.
std::optional<int> detect_oscillation_onset(double gamma0, int n_max, double t_max, int n_samples);

struct ValidationReport {
    std::vector<CriterionResult> results;
    bool all_pass = true;
    std::string first_failure;
};

/// Runs the tolerance gate on the configured grid ("default" or "smoke").
ValidationReport run_validation(const ExperimentConfig& cfg);

}  // namespace cbath
