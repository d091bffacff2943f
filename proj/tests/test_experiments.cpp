#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cbath/errors.hpp"
#include "cbath/experiments.hpp"

using namespace cbath;

namespace {
constexpr double kPi = std::numbers::pi;

std::string render(const SweepTable& table) {
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.experiment = "fig1";
    CHECK_NOTHROW(cfg.validate());

    cfg.experiment = "fig9";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg.experiment = "fig1";
    cfg.t_max = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.t_max = -1.0;
    cfg.n_samples = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.n_samples = -1;
    cfg.theta_list = {9.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config file loading and flag precedence") {
    const std::string path = "cbath_test_config.tmp";
    {
        std::ofstream file(path);
        file << "# comment\n";
        file << "experiment = fig2\n";
        file << "gamma0 = 7.5\n";
        file << "n-list = 1,3,5\n";
        file << "t-max = 2.5\n";
    }
    ExperimentConfig cfg;
    cfg.gamma0 = 0.3;  // pretend --gamma0 was passed
    load_config_file(path, cfg, {"gamma0"});
    CHECK(cfg.experiment == "fig2");
    CHECK(cfg.gamma0 == 0.3);  // flag wins
    CHECK(cfg.t_max == 2.5);
    CHECK(cfg.n_list == std::vector<int>{1, 3, 5});
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_config_file("does_not_exist.cfg", cfg, {}), ConfigError);

    {
        std::ofstream file(path);
        file << "bogus-key = 1\n";
    }
    CHECK_THROWS_AS(load_config_file(path, cfg, {}), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("fig1 sweep") {
    ExperimentConfig cfg;
    cfg.experiment = "fig1";
    cfg.n_samples = 11;
    cfg.t_max = 100.0;
    const SweepTable table = run_experiment(cfg);

    CHECK(table.columns == std::vector<std::string>{"lambda_t", "N", "qfi"});
    CHECK(table.rows.size() == 11 * 4);

    // first row: t = 0, N = 1 has unit QFI
    CHECK(table.rows.front()[0] == "0");
    CHECK(table.rows.front()[1] == "1");
    CHECK(std::stod(table.rows.front()[2]) == doctest::Approx(1.0).epsilon(1e-15));

    // last N = 2 row sits near the asymptote 0.25
    double final_n2 = -1.0;
    for (const auto& row : table.rows)
        if (row[1] == "2") final_n2 = std::stod(row[2]);
    CHECK(std::abs(final_n2 - 0.25) < 5e-3);

    // rows are ordered lexicographically in (lambda_t, N)
    double prev_t = -1.0;
    int prev_n = 0;
    for (const auto& row : table.rows) {
        const double t = std::stod(row[0]);
        const int n = std::stoi(row[1]);
        if (t == prev_t) CHECK(n > prev_n);
        else CHECK(t > prev_t);
        prev_t = t;
        prev_n = n;
    }
}

TEST_CASE("fig5 sweep: dark angle and symmetry") {
    ExperimentConfig cfg;
    cfg.experiment = "fig5";
    cfg.n_samples = 17;
    cfg.k_steps = 2000;
    const SweepTable table = run_experiment(cfg);
    CHECK(table.columns == std::vector<std::string>{"gamma0", "theta", "method", "gp"});

    // collect closed-form rows per gamma0 in theta order
    std::vector<double> weak_gp, strong_gp;
    for (const auto& row : table.rows) {
        if (row[2] != "closed_form") continue;
        (std::stod(row[0]) < 1.0 ? weak_gp : strong_gp).push_back(std::stod(row[3]));
    }
    CHECK(weak_gp.size() == 17);
    CHECK(strong_gp.size() == 17);
    for (const auto& gp : {weak_gp, strong_gp}) {
        CHECK(std::abs(gp[8]) < 1e-30);  // theta = pi
        for (std::size_t j = 0; j < gp.size(); ++j)
            CHECK(gp[j] == doctest::Approx(gp[gp.size() - 1 - j]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("fig4 sweep shape") {
    ExperimentConfig cfg;
    cfg.experiment = "fig4";
    cfg.n_list = {1, 2, 4};
    cfg.k_steps = 2000;
    const SweepTable table = run_experiment(cfg);
    CHECK(table.columns ==
          std::vector<std::string>{"gamma0", "N", "gp_kinematic", "gp_closed_form"});
    CHECK(table.rows.size() == 6);  // two regimes x three N
    for (const auto& row : table.rows)
        CHECK(std::abs(std::stod(row[2]) - std::stod(row[3])) < 1e-3);
}

TEST_CASE("CSV output layout and determinism") {
    ExperimentConfig cfg;
    cfg.experiment = "fig2";
    cfg.n_samples = 21;
    const SweepTable table = run_experiment(cfg);
    const std::string text = render(table);

    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# experiment=fig2", 0) == 0);  // resolved-config comment
    CHECK(line.find("gamma0=10") != std::string::npos);
    std::getline(is, line);
    CHECK(line == "lambda_t,N,qfi");
    std::getline(is, line);
    CHECK(split_line(line).size() == 3);

    CHECK(render(run_experiment(cfg)) == text);  // byte-identical rerun
}

TEST_CASE("17 significant digit cells") {
    CHECK(format_cell(0.25) == "0.25");
    CHECK(format_cell(1.0) == "1");
    const std::string third = format_cell(1.0 / 3.0);
    CHECK(third.size() >= 18);
    CHECK(std::stod(third) == 1.0 / 3.0);  // round trip
}

TEST_CASE("oscillation onset detection") {
    CHECK(detect_oscillation_onset(0.05, 20, 50.0, 2000) == 11);
    CHECK(detect_oscillation_onset(10.0, 20, 50.0, 2000) == 1);
    CHECK(!detect_oscillation_onset(0.01, 20, 50.0, 2000).has_value());  // N_c = 51
    CHECK(detect_oscillation_onset(0.1, 20, 50.0, 2000) == 6);
    CHECK(detect_oscillation_onset(0.25, 20, 50.0, 2000) == 3);
}

TEST_CASE("smoke validation grid passes") {
    ExperimentConfig cfg;
    cfg.experiment = "validate";
    cfg.grid = "smoke";
    const ValidationReport report = run_validation(cfg);
    CHECK(report.all_pass);
    CHECK(report.results.size() == 4);
    for (const auto& r : report.results) CHECK(r.pass);
}
