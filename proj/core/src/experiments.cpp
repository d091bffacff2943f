#include "cbath/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "cbath/errors.hpp"
#include "cbath/geometric_phase.hpp"
#include "cbath/model.hpp"
#include "cbath/qfi.hpp"

namespace cbath {

namespace {

constexpr double kPi = std::numbers::pi;

int worker_count() {
    const char* env = std::getenv("CBATH_WORKERS");
    if (env == nullptr) return 1;
    const int parsed = std::atoi(env);
    return std::clamp(parsed, 1, 64);
}

// Index-parallel loop with deterministic output: each index writes only its
// own preallocated slot, so the worker count never changes the result.
void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

struct ResolvedSweep {
    std::vector<double> gamma0_list;
    std::vector<int> n_list;
    std::vector<double> theta_list;
    double t_max = 0.0;
    int n_samples = 0;
};

ResolvedSweep resolve(const ExperimentConfig& cfg) {
    ResolvedSweep r;
    const bool both_regimes = cfg.gamma0 < 0.0;
    const std::string& e = cfg.experiment;
    if (e == "fig1") {
        r.gamma0_list = {both_regimes ? 0.05 : cfg.gamma0};
        r.n_list = cfg.n_list.empty() ? std::vector<int>{1, 2, 4, 8} : cfg.n_list;
        r.t_max = cfg.t_max > 0.0 ? cfg.t_max : 30.0;
        r.n_samples = cfg.n_samples > 1 ? cfg.n_samples : 601;
    } else if (e == "fig2") {
        r.gamma0_list = {both_regimes ? 10.0 : cfg.gamma0};
        r.n_list = cfg.n_list.empty() ? std::vector<int>{1, 2, 4, 8} : cfg.n_list;
        r.t_max = cfg.t_max > 0.0 ? cfg.t_max : 3.0;
        r.n_samples = cfg.n_samples > 1 ? cfg.n_samples : 601;
    } else if (e == "fig3") {
        r.gamma0_list = {both_regimes ? 0.05 : cfg.gamma0};
        r.n_list = cfg.n_list.empty() ? std::vector<int>{8, 9, 10, 11, 12, 13, 14} : cfg.n_list;
        r.t_max = cfg.t_max > 0.0 ? cfg.t_max : 50.0;
        r.n_samples = cfg.n_samples > 1 ? cfg.n_samples : 2001;
    } else if (e == "fig4") {
        r.gamma0_list = both_regimes ? std::vector<double>{0.05, 10.0}
                                     : std::vector<double>{cfg.gamma0};
        if (cfg.n_list.empty()) {
            for (int n = 1; n <= 1024; n *= 2) r.n_list.push_back(n);
        } else {
            r.n_list = cfg.n_list;
        }
        r.theta_list = cfg.theta_list.empty() ? std::vector<double>{kPi / 4.0} : cfg.theta_list;
    } else if (e == "fig5") {
        r.gamma0_list = both_regimes ? std::vector<double>{0.05, 10.0}
                                     : std::vector<double>{cfg.gamma0};
        r.n_list = cfg.n_list.empty() ? std::vector<int>{2} : cfg.n_list;
        if (cfg.theta_list.empty()) {
            const int points = cfg.n_samples > 1 ? cfg.n_samples : 129;
            for (int j = 0; j < points; ++j)
                r.theta_list.push_back(2.0 * kPi * j / (points - 1));
        } else {
            r.theta_list = cfg.theta_list;
        }
    } else {
        throw ConfigError("run_experiment: unknown experiment '" + e + "'");
    }
    return r;
}

std::string join_ints(const std::vector<int>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

std::string comment_line(const ExperimentConfig& cfg, const ResolvedSweep& sweep) {
    std::ostringstream os;
    os << "experiment=" << cfg.experiment;
    os << " gamma0=";
    for (std::size_t i = 0; i < sweep.gamma0_list.size(); ++i)
        os << (i ? "," : "") << format_cell(sweep.gamma0_list[i]);
    os << " omega0=" << format_cell(cfg.omega0);
    if (!sweep.n_list.empty()) os << " n_list=" << join_ints(sweep.n_list);
    if (sweep.t_max > 0.0) os << " t_max=" << format_cell(sweep.t_max);
    if (sweep.n_samples > 0) os << " n_samples=" << sweep.n_samples;
    if (!sweep.theta_list.empty()) os << " n_theta=" << sweep.theta_list.size();
    os << " ode_dt=" << format_cell(cfg.ode_dt) << " k_steps="
       << (cfg.k_steps > 0 ? std::to_string(cfg.k_steps) : std::string("auto"));
    return os.str();
}

SweepTable qfi_sweep(const ExperimentConfig& cfg, const ResolvedSweep& sweep) {
    const ReservoirSpec spec{sweep.gamma0_list.front(), 1.0, cfg.omega0};
    SweepTable table;
    table.config_comment = comment_line(cfg, sweep);
    table.columns = {"lambda_t", "N", "qfi"};
    const int nt = sweep.n_samples;
    for (int it = 0; it < nt; ++it) {
        const double t = sweep.t_max * it / (nt - 1);
        for (int n : sweep.n_list) {
            const QfiResult qfi = qfi_analytic(spec, EnsembleSpec{n}, t);
            table.rows.push_back({format_cell(t), std::to_string(n), format_cell(qfi.value)});
        }
    }
    return table;
}

SweepTable gp_vs_n_sweep(const ExperimentConfig& cfg, const ResolvedSweep& sweep) {
    SweepTable table;
    table.config_comment = comment_line(cfg, sweep);
    table.columns = {"gamma0", "N", "gp_kinematic", "gp_closed_form"};
    const double theta = sweep.theta_list.front();

    struct Job {
        double gamma0;
        int n;
    };
    std::vector<Job> jobs;
    for (double g0 : sweep.gamma0_list)
        for (int n : sweep.n_list) jobs.push_back({g0, n});

    std::vector<std::array<double, 2>> values(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), [&](int i) {
        const auto iu = static_cast<std::size_t>(i);
        const ReservoirSpec spec{jobs[iu].gamma0, 1.0, cfg.omega0};
        const EnsembleSpec ens{jobs[iu].n};
        const int k = cfg.k_steps > 0 ? cfg.k_steps : suggested_k_steps(spec, ens);
        const Trajectory traj = build_trajectory(spec, ens, theta, k);
        values[iu][0] = gp_kinematic(traj).unwrapped;
        values[iu][1] = gp_closed_form(spec, ens, theta, k).unwrapped;
    });
    for (std::size_t i = 0; i < jobs.size(); ++i)
        table.rows.push_back({format_cell(jobs[i].gamma0), std::to_string(jobs[i].n),
                              format_cell(values[i][0]), format_cell(values[i][1])});
    return table;
}

SweepTable gp_vs_theta_sweep(const ExperimentConfig& cfg, const ResolvedSweep& sweep) {
    SweepTable table;
    table.config_comment = comment_line(cfg, sweep);
    table.columns = {"gamma0", "theta", "method", "gp"};
    const int n = sweep.n_list.front();

    struct Job {
        double gamma0;
        double theta;
    };
    std::vector<Job> jobs;
    for (double g0 : sweep.gamma0_list)
        for (double theta : sweep.theta_list) jobs.push_back({g0, theta});

    std::vector<std::array<double, 2>> values(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), [&](int i) {
        const auto iu = static_cast<std::size_t>(i);
        const ReservoirSpec spec{jobs[iu].gamma0, 1.0, cfg.omega0};
        const EnsembleSpec ens{n};
        const int k = cfg.k_steps > 0 ? cfg.k_steps : suggested_k_steps(spec, ens);
        values[iu][0] = gp_closed_form(spec, ens, jobs[iu].theta, k).unwrapped;
        const Trajectory traj = build_trajectory(spec, ens, jobs[iu].theta, k);
        values[iu][1] = gp_kinematic(traj).unwrapped;
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        table.rows.push_back({format_cell(jobs[i].gamma0), format_cell(jobs[i].theta),
                              "closed_form", format_cell(values[i][0])});
        table.rows.push_back({format_cell(jobs[i].gamma0), format_cell(jobs[i].theta), "kinematic",
                              format_cell(values[i][1])});
    }
    return table;
}

}  // namespace

void ExperimentConfig::validate() const {
    static const std::vector<std::string> known{"fig1",    "fig2", "fig3",    "fig4",
                                                "fig5",    "nc-scan", "validate"};
    if (std::find(known.begin(), known.end(), experiment) == known.end())
        throw ConfigError("unknown experiment '" + experiment + "'");
    if (gamma0 >= 0.0 && !(gamma0 > 0.0)) throw ConfigError("gamma0 must be positive");
    if (!(omega0 > 0.0)) throw ConfigError("omega0 must be positive");
    if (t_max >= 0.0 && !(t_max > 0.0)) throw ConfigError("t_max must be positive");
    if (n_samples >= 0 && n_samples < 2) throw ConfigError("n_samples must be >= 2");
    for (int n : n_list)
        if (n < 1) throw ConfigError("n_list entries must be >= 1");
    for (double theta : theta_list)
        if (!(theta >= 0.0 && theta <= 2.0 * kPi))
            throw ConfigError("theta_list entries must lie in [0, 2 pi]");
    if (!(ode_dt > 0.0)) throw ConfigError("ode_dt must be positive");
    if (bath_modes < 2) throw ConfigError("bath_modes must be >= 2");
    if (!(bath_half_width > 0.0)) throw ConfigError("bath_half_width must be positive");
    if (!(bath_dt > 0.0)) throw ConfigError("bath_dt must be positive");
    if (k_steps < 0) throw ConfigError("k_steps must be >= 0");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (grid != "default" && grid != "smoke") throw ConfigError("grid must be default or smoke");
}

std::string format_cell(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

SweepTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const ResolvedSweep sweep = resolve(cfg);
    const std::string& e = cfg.experiment;
    if (e == "fig1" || e == "fig2" || e == "fig3") return qfi_sweep(cfg, sweep);
    if (e == "fig4") return gp_vs_n_sweep(cfg, sweep);
    return gp_vs_theta_sweep(cfg, sweep);
}

void write_csv(const SweepTable& table, std::ostream& os) {
    os << "# " << table.config_comment << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

void write_csv(const SweepTable& table, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    write_csv(table, file);
}

std::optional<int> detect_oscillation_onset(double gamma0, int n_max, double t_max, int n_samples) {
    if (n_max < 1) throw std::invalid_argument("detect_oscillation_onset: n_max must be >= 1");
    if (n_samples < 2) throw std::invalid_argument("detect_oscillation_onset: n_samples must be >= 2");
    const ReservoirSpec spec{gamma0, 1.0, 5.0};
    constexpr double kGuard = 1e-10;
    for (int n = 1; n <= n_max; ++n) {
        const EnsembleSpec ens{n};
        double runmin = qfi_analytic(spec, ens, 0.0).value;
        bool fell = false;
        for (int i = 1; i < n_samples; ++i) {
            const double t = t_max * i / (n_samples - 1);
            const double value = qfi_analytic(spec, ens, t).value;
            if (value < runmin - kGuard) {
                fell = true;
                runmin = value;
            } else {
                if (fell && value > runmin + kGuard) return n;
                runmin = std::min(runmin, value);
            }
        }
    }
    return std::nullopt;
}

ValidationReport run_validation(const ExperimentConfig& cfg) {
    cfg.validate();
    AcceptanceOptions opts;
    opts.bath_modes = cfg.bath_modes;
    opts.bath_half_width = cfg.bath_half_width;
    opts.bath_dt = cfg.bath_dt;
    const AcceptanceGrid grid =
        cfg.grid == "smoke" ? AcceptanceGrid::Smoke : AcceptanceGrid::Full;

    ValidationReport report;
    report.results = run_acceptance(grid, opts);
    for (const auto& r : report.results) {
        if (!r.pass && report.all_pass) {
            report.all_pass = false;
            report.first_failure = r.id + ": " + r.label;
        }
    }
    return report;
}

namespace {

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) parts.push_back(item);
    return parts;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void load_config_file(const std::string& path, ExperimentConfig& cfg,
                      const std::vector<std::string>& locked_keys) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file '" + path + "'");

    auto locked = [&](const std::string& key) {
        return std::find(locked_keys.begin(), locked_keys.end(), key) != locked_keys.end();
    };

    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (locked(key)) continue;

        try {
            if (key == "experiment") cfg.experiment = value;
            else if (key == "gamma0") cfg.gamma0 = std::stod(value);
            else if (key == "omega0") cfg.omega0 = std::stod(value);
            else if (key == "n-list") {
                cfg.n_list.clear();
                for (const auto& part : split_csv_list(value)) cfg.n_list.push_back(std::stoi(trim(part)));
            } else if (key == "theta-list") {
                cfg.theta_list.clear();
                for (const auto& part : split_csv_list(value))
                    cfg.theta_list.push_back(std::stod(trim(part)));
            } else if (key == "t-max") cfg.t_max = std::stod(value);
            else if (key == "n-samples") cfg.n_samples = std::stoi(value);
            else if (key == "ode-dt") cfg.ode_dt = std::stod(value);
            else if (key == "bath-modes") cfg.bath_modes = std::stoi(value);
            else if (key == "bath-half-width") cfg.bath_half_width = std::stod(value);
            else if (key == "bath-dt") cfg.bath_dt = std::stod(value);
            else if (key == "k-steps") cfg.k_steps = std::stoi(value);
            else if (key == "n-max") cfg.n_max = std::stoi(value);
            else if (key == "grid") cfg.grid = value;
            else if (key == "out") cfg.out = value;
            else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        }
    }
}

}  // namespace cbath
