#pragma once
// acceptance.hpp: the cross-route tolerance gate. Every check runs the
// relevant computation at pinned parameters and reports one pass/fail line.
// Used both by the stand-alone acceptance test binary and the `validate`
// subcommand of the CLI.

#include <iosfwd>
#include <string>
#include <vector>

namespace cbath {

struct CriterionResult {
    std::string id;
    std::string label;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

enum class AcceptanceGrid { Full, Smoke };

struct AcceptanceOptions {
    int bath_modes = 4000;
    double bath_half_width = 50.0;
    double bath_dt = 5e-4;
};

std::vector<CriterionResult> run_acceptance(AcceptanceGrid grid, const AcceptanceOptions& opts = {});

/// One line per criterion; returns the number of failures.
int print_criteria(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace cbath
