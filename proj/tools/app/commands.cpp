#include "commands.hpp"

#include <chrono>
#include <fstream>

#include "csv.hpp"
#include "ric/simulate.hpp"

namespace ric::app {

namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
}

fs::path write_curves(const fs::path& path, const SolutionCurves& curves,
                      const StrategyCurves& strategy) {
  CsvWriter csv(path, {"t", "Y", "Y0", "Ytilde", "c_star", "V_at_1", "L"});
  for (std::size_t k = 0; k < curves.grid.size(); ++k) {
    csv.cell(curves.grid.node(k))
        .cell(curves.y[k])
        .cell(curves.y0[k])
        .cell(curves.ytilde[k])
        .cell(strategy.c_star[k])
        .cell(strategy.value[k])
        .cell(strategy.loss[k]);
    csv.end_row();
  }
  return path;
}

fs::path write_checks(const fs::path& path, const std::vector<OrderingCheck>& checks,
                      const char* empty_note, RunReport& report) {
  std::ofstream txt(path, std::ios::binary);
  if (!txt) throw ConfigError("cannot write " + path.string());
  if (checks.empty()) txt << empty_note << '\n';
  for (const auto& c : checks) {
    txt << (c.holds ? "PASS " : "FAIL ") << c.label << "  max_excess=" << format_number(c.worst_excess)
        << '\n';
    report.assertions.push_back({c.label, c.holds});
    if (!c.holds) report.exit_code = kAssertionFailure;
  }
  return path;
}

}  // namespace

RunReport cmd_solve(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  RunReport report;
  Stopwatch clock;
  const Problem problem = config.problem();
  const TimeGrid grid(config.market.horizon, config.grid);
  const auto curves = solve_curves(problem, grid);
  const auto strategy = evaluate_strategy(problem, curves);
  report.timings.emplace_back("solve", clock.lap());

  report.files.push_back(write_curves(out / "strategy.csv", curves, strategy));
  CsvWriter csv(out / "exposure.csv", {"i", "p_star_i", "phi_star_i"});
  for (Eigen::Index i = 0; i < strategy.p_star.front().size(); ++i) {
    csv.cell(static_cast<std::size_t>(i + 1))
        .cell(strategy.p_star.front()[i])
        .cell(strategy.phi_star.front()[i]);
    csv.end_row();
  }
  report.files.push_back(out / "exposure.csv");
  report.timings.emplace_back("write", clock.lap());
  return report;
}

RunReport cmd_compare(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  RunReport report;
  Stopwatch clock;
  const auto cases = config.cases.empty() ? standard_cases() : config.cases;
  const TimeGrid grid(config.market.horizon, config.grid);
  const auto suite = run_case_suite(config.market, config.ambiguity, cases, grid);
  report.timings.emplace_back("solve", clock.lap());

  for (const auto& c : suite.cases) {
    report.files.push_back(write_curves(out / ("case_" + c.name + ".csv"), c.curves, c.strategy));
  }
  report.files.push_back(write_checks(out / "orderings.txt", suite.checks,
                                      "no orderings: fewer than two comparable cases", report));
  report.timings.emplace_back("write", clock.lap());
  return report;
}

RunReport cmd_sweep(const ScenarioConfig& config, const fs::path& out, std::size_t index,
                    const std::vector<double>& values) {
  if (index == 0) throw DomainError("sweep index is 1-based");
  prepare(out);
  RunReport report;
  Stopwatch clock;
  const TimeGrid grid(config.market.horizon, config.grid);
  const auto sweep = eta_sweep(config.problem(), index - 1, values, grid);
  report.timings.emplace_back("solve", clock.lap());

  const std::string stem = "sweep_eta" + std::to_string(index) + "_";
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto path = out / (stem + format_number(values[v]) + ".csv");
    CsvWriter csv(path, {"t", "Y", "c_star", "V_at_1"});
    const auto& curves = sweep.curves[v];
    for (std::size_t k = 0; k < grid.size(); ++k) {
      csv.cell(grid.node(k)).cell(curves.y[k]).cell(sweep.strategy[v].c_star[k]).cell(
          sweep.strategy[v].value[k]);
      csv.end_row();
    }
    report.files.push_back(path);
  }
  report.files.push_back(write_checks(out / "monotonicity.txt", sweep.checks,
                                      "no comparisons: single sweep value", report));
  report.timings.emplace_back("write", clock.lap());
  return report;
}

RunReport cmd_simulate(const ScenarioConfig& config, const fs::path& out) {
  prepare(out);
  RunReport report;
  Stopwatch clock;
  auto cases = config.simulation.cases;
  if (cases.empty()) cases.push_back({"base", config.exposure, config.band, false});

  SimConfig sim{config.simulation.paths, TimeGrid(config.market.horizon, config.grid),
                config.simulation.seed, config.simulation.antithetic, config.simulation.threads,
                false};
  CsvWriter csv(out / "mc_report.csv",
                {"case", "estimate", "stderr", "analytic_V", "z_score", "paths", "passed"});
  for (const auto& c : cases) {
    Problem problem{config.market, config.ambiguity, c.exposure, c.band};
    if (c.ambiguity_neutral) problem = problem.ambiguity_neutral();
    auto result = check_value_consistency(problem, sim);
    result.label = c.name;
    report.timings.emplace_back("simulate " + c.name, clock.lap());
    csv.cell(c.name)
        .cell(result.estimate)
        .cell(result.stderr_)
        .cell(result.analytic)
        .cell(result.z_score)
        .cell(result.paths)
        .cell(std::string(result.passed ? "true" : "false"));
    csv.end_row();
    report.assertions.push_back({c.name + " |z| <= 3", result.passed});
    if (!result.passed) report.exit_code = kConsistencyFailure;
  }
  report.files.push_back(out / "mc_report.csv");
  return report;
}

}  // namespace ric::app
