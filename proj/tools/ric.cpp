#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "ric/errors.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma;
  std::optional<std::size_t> paths;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory (default: the config's 'output')");
  cmd->add_option("--grid", o.grid, "Number of time steps")->check(CLI::Range(2, 10'000'000));
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--gamma", o.gamma, "Override the relative risk aversion");
  cmd->add_option("--paths", o.paths, "Override the Monte Carlo path count")->check(CLI::PositiveNumber);
}

ric::app::ScenarioConfig resolve(const Overrides& o) {
  auto cfg = ric::app::load_config(o.config);
  if (o.grid) cfg.grid = *o.grid;
  if (o.seed) cfg.simulation.seed = *o.seed;
  if (o.paths) cfg.simulation.paths = *o.paths;
  if (o.gamma) {
    cfg.market.risk_aversion = *o.gamma;
    ric::require_valid(cfg.problem());
  }
  if (!o.out.empty()) cfg.output = o.out;
  return cfg;
}

void print(const ric::app::RunReport& report) {
  for (const auto& f : report.files) std::cout << "wrote " << f.string() << '\n';
  for (const auto& a : report.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.label << '\n';
  }
  for (const auto& [stage, seconds] : report.timings) {
    std::cout << "time " << stage << ": " << seconds << " s\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ric::app;
  CLI::App app{"Robust investment-consumption solver"};
  app.require_subcommand(1);
  Overrides o;
  std::size_t index = 1;
  std::vector<double> values;

  auto* solve = app.add_subcommand("solve", "Value curves, strategy and utility loss");
  auto* compare = app.add_subcommand("compare", "Constraint cases and their orderings");
  auto* sweep = app.add_subcommand("sweep", "Sweep one ambiguity weight");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the value function");
  for (auto* cmd : {solve, compare, sweep, simulate}) add_common(cmd, o);
  sweep->add_option("--index", index, "1-based factor index")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--values", values, "Comma-separated weights")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationFailure;
  }

  try {
    const auto cfg = resolve(o);
    RunReport report;
    if (*solve) report = cmd_solve(cfg, cfg.output);
    if (*compare) report = cmd_compare(cfg, cfg.output);
    if (*sweep) report = cmd_sweep(cfg, cfg.output, index, values);
    if (*simulate) report = cmd_simulate(cfg, cfg.output);
    print(report);
    return report.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ric::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ric::SingularCovarianceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ric::OrderingViolationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const ric::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConsistencyFailure;
  } catch (const ric::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverFailure;
  }
}
