#pragma once

// Property and oracle checks shared by the `check` command and the
// acceptance test binary.

#include <functional>
#include <string>
#include <vector>

namespace fvdsr {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

struct Check {
    std::string name;
    double budget_seconds = 1.0;
    bool gating = true;  // informational checks never fail a run
    std::function<bool(std::string& detail)> body;
};

/// Runs the body, times it and fails it when the budget is exceeded or the
/// body throws.
CheckResult run_check(const Check& check);

/// The ten acceptance criteria, in order.
std::vector<Check> acceptance_checks(unsigned threads);

/// Oracle suite behind `check`. Closed-form claims that disagree with the
/// exact references are carried as informational entries.
std::vector<Check> oracle_suite(unsigned threads);

}  // namespace fvdsr
