#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace ric::app {

enum ExitCode : int {
  kSuccess = 0,
  kSolverFailure = 1,
  kValidationFailure = 2,
  kAssertionFailure = 3,
  kConsistencyFailure = 4,
};

struct Assertion {
  std::string label;
  bool passed = true;
};

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::vector<Assertion> assertions;
  std::vector<std::pair<std::string, double>> timings;  ///< seconds per stage
  int exit_code = kSuccess;
};

/// strategy.csv (t, Y, Y0, Ytilde, c_star, V_at_1, L) and exposure.csv (i, p_star_i, phi_star_i).
RunReport cmd_solve(const ScenarioConfig& config, const std::filesystem::path& out);

/// One CSV per configured case plus orderings.txt.
RunReport cmd_compare(const ScenarioConfig& config, const std::filesystem::path& out);

/// One CSV per value of eta[index] (1-based) plus monotonicity.txt.
RunReport cmd_sweep(const ScenarioConfig& config, const std::filesystem::path& out,
                    std::size_t index, const std::vector<double>& values);

/// mc_report.csv with one row per simulation case.
RunReport cmd_simulate(const ScenarioConfig& config, const std::filesystem::path& out);

}  // namespace ric::app
