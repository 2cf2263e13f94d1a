#include "ric/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "ric/errors.hpp"

namespace ric {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// SplitMix64 stream keyed by (seed, stream index).
class StreamEngine {
 public:
  using result_type = std::uint64_t;
  StreamEngine(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed ^ mix(stream))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

 private:
  std::uint64_t state_;
};

/// Deterministic per-step coefficients shared by all paths.
struct StepTable {
  std::vector<double> log_drift;     // per step, times dt
  std::vector<double> consumption;   // per node: e^{-int rho} c^{1-gamma}/(1-gamma)
  std::vector<double> penalty;       // per node: e^{-int rho} phi'H^{-1}phi Y^gamma / 2
};

StepTable build_table(const Problem& problem, const ControlCurves& controls,
                      std::span<const double> y, const TimeGrid& grid) {
  const auto& market = problem.market;
  const double g = problem.gamma();
  const Vector& eta = problem.ambiguity.eta;
  const double h = grid.dt();
  StepTable table;
  table.log_drift.resize(grid.steps());
  table.consumption.resize(grid.size());
  table.penalty.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.node(k);
    const double discount = std::exp(-market.discount.integral(0.0, t));
    const double c = controls.consumption[k];
    table.consumption[k] = discount * std::pow(c, 1.0 - g) / (1.0 - g);
    double weighted = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      if (eta[i] > 0.0) weighted += controls.distortion[k][i] * controls.distortion[k][i] / eta[i];
    }
    table.penalty[k] = discount * 0.5 * weighted * std::pow(y[k], g);
    if (k == grid.steps()) break;
    const Vector& p = controls.exposure[k];
    const Vector theta = market_price_of_risk(market, t);
    const double t1 = grid.node(k + 1);
    const double rate = market.rate.integral(t, t1);
    const double c_mean = 0.5 * (c + controls.consumption[k + 1]) * h;
    table.log_drift[k] =
        rate + (p.dot(theta + controls.distortion[k]) - 0.5 * p.squaredNorm()) * h - c_mean;
  }
  return table;
}

void check_controls(const Problem& problem, const ControlCurves& controls,
                    std::span<const double> y, const SimConfig& sim) {
  const std::size_t size = sim.grid.size();
  const auto n = static_cast<Eigen::Index>(problem.market.num_factors());
  if (controls.exposure.size() != size || controls.consumption.size() != size ||
      controls.distortion.size() != size || y.size() != size) {
    throw DomainError("control curves must be sampled on every simulation grid node");
  }
  for (std::size_t k = 0; k < size; ++k) {
    if (controls.exposure[k].size() != n || controls.distortion[k].size() != n) {
      throw DomainError("control vectors must have one entry per Brownian factor");
    }
    if (!(controls.consumption[k] >= 0.0) || !(y[k] > 0.0)) {
      throw DomainError("consumption must be nonnegative and the value curve positive");
    }
  }
  if (sim.paths == 0) throw DomainError("simulation needs at least one path");
  if (sim.antithetic && sim.paths % 2 != 0) {
    throw DomainError("antithetic sampling needs an even number of paths");
  }
}

}  // namespace

PathBatch simulate_wealth(const Problem& problem, const ControlCurves& controls,
                          std::span<const double> value_curve, const SimConfig& sim) {
  require_valid(problem);
  check_controls(problem, controls, value_curve, sim);
  const auto& grid = sim.grid;
  const StepTable table = build_table(problem, controls, value_curve, grid);
  const double g = problem.gamma();
  const double h = grid.dt();
  const double root_h = std::sqrt(h);
  const std::size_t steps = grid.steps();
  const std::size_t nodes = grid.size();
  const auto n = static_cast<Eigen::Index>(problem.market.num_factors());
  const double log_x0 = std::log(problem.market.initial_wealth);

  PathBatch batch;
  batch.paths = sim.paths;
  batch.antithetic = sim.antithetic;
  batch.terminal_wealth.resize(sim.paths);
  batch.min_wealth.resize(sim.paths);
  batch.consumption_utility.resize(sim.paths);
  batch.penalty.resize(sim.paths);
  if (sim.record_paths) batch.wealth.resize(sim.paths * nodes);

  const std::size_t group = sim.antithetic ? 2 : 1;
  const std::size_t units = sim.paths / group;

  const auto run_units = [&](std::size_t first, std::size_t last) {
    for (std::size_t u = first; u < last; ++u) {
      StreamEngine engine(sim.seed, u);
      std::normal_distribution<double> normal;
      double log_x[2] = {log_x0, log_x0};
      double lowest[2] = {log_x0, log_x0};
      double cons[2] = {0.0, 0.0};
      double pen[2] = {0.0, 0.0};
      const auto accumulate = [&](std::size_t k, double weight) {
        for (std::size_t j = 0; j < group; ++j) {
          const double scaled = std::exp((1.0 - g) * log_x[j]);
          cons[j] += weight * table.consumption[k] * scaled;
          pen[j] += weight * table.penalty[k] * scaled;
          if (sim.record_paths) batch.wealth[(u * group + j) * nodes + k] = std::exp(log_x[j]);
        }
      };
      accumulate(0, 0.5 * h);
      for (std::size_t k = 0; k < steps; ++k) {
        const Vector& p = controls.exposure[k];
        double diffusion = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) diffusion += p[i] * normal(engine) * root_h;
        log_x[0] += table.log_drift[k] + diffusion;
        log_x[1] += table.log_drift[k] - diffusion;
        lowest[0] = std::min(lowest[0], log_x[0]);
        lowest[1] = std::min(lowest[1], log_x[1]);
        accumulate(k + 1, k + 1 == steps ? 0.5 * h : h);
      }
      for (std::size_t j = 0; j < group; ++j) {
        const std::size_t path = u * group + j;
        batch.terminal_wealth[path] = std::exp(log_x[j]);
        batch.min_wealth[path] = std::exp(lowest[j]);
        batch.consumption_utility[path] = cons[j];
        batch.penalty[path] = pen[j];
      }
    }
  };

  unsigned workers = sim.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : sim.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, units));
  if (workers <= 1) {
    run_units(0, units);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (units + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = std::min(units, w * chunk);
      const std::size_t last = std::min(units, first + chunk);
      pool.emplace_back(run_units, first, last);
    }
    for (auto& t : pool) t.join();
  }
  return batch;
}

ObjectiveEstimate estimate_objective(const Problem& problem, const PathBatch& batch) {
  const auto& market = problem.market;
  const double g = problem.gamma();
  const double terminal_weight = std::exp(-market.discount.integral(0.0, market.horizon)) *
                                 market.bequest_weight / (1.0 - g);
  const std::size_t group = batch.antithetic ? 2 : 1;
  const std::size_t units = batch.paths / group;
  if (units == 0) throw DomainError("empty path batch");

  std::vector<double> unit_value(units, 0.0);
  for (std::size_t u = 0; u < units; ++u) {
    for (std::size_t j = 0; j < group; ++j) {
      const std::size_t path = u * group + j;
      unit_value[u] += batch.consumption_utility[path] + batch.penalty[path] +
                       terminal_weight * std::pow(batch.terminal_wealth[path], 1.0 - g);
    }
    unit_value[u] /= static_cast<double>(group);
  }
  double sum = 0.0;
  for (double v : unit_value) sum += v;
  const double mean = sum / static_cast<double>(units);
  double ss = 0.0;
  for (double v : unit_value) ss += (v - mean) * (v - mean);
  const double variance = units > 1 ? ss / static_cast<double>(units - 1) : 0.0;
  return {mean, std::sqrt(variance / static_cast<double>(units)), units};
}

void ConsistencyReport::require_pass() const {
  if (passed) return;
  std::ostringstream msg;
  msg.precision(10);
  msg << "Monte Carlo estimate " << estimate << " differs from V(0, x0) = " << analytic << " by "
      << z_score << " standard errors (stderr " << stderr_ << ", " << paths << " paths)";
  if (!label.empty()) msg << " [" << label << "]";
  throw ConsistencyError(msg.str());
}

OptimalControls optimal_controls(const Problem& problem, const TimeGrid& grid) {
  OptimalControls out;
  out.y = integrate_y(problem, grid);
  const double g = problem.gamma();
  const Vector& eta = problem.ambiguity.eta;
  const ExposureSet scaled = problem.scaled_exposure();
  const Vector zero = Vector::Zero(eta.size());
  auto& ctl = out.controls;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vector theta = market_price_of_risk(problem.market, grid.node(k));
    ctl.exposure.push_back(optimal_exposure(theta, eta, g, scaled, out.y[k], zero));
    ctl.distortion.push_back(-eta.cwiseProduct(ctl.exposure.back()));
    ctl.consumption.push_back(optimal_consumption(out.y[k], problem.band));
  }
  return out;
}

ConsistencyReport check_value_consistency(const Problem& problem, const SimConfig& sim) {
  const auto optimal = optimal_controls(problem, sim.grid);
  const auto batch = simulate_wealth(problem, optimal.controls, optimal.y, sim);
  const auto est = estimate_objective(problem, batch);
  ConsistencyReport report;
  report.estimate = est.mean;
  report.stderr_ = est.stderr_;
  report.analytic = value_function(problem.market.initial_wealth, optimal.y.front(), problem.gamma());
  report.paths = sim.paths;
  const double gap = est.mean - report.analytic;
  report.z_score = est.stderr_ > 0.0 ? gap / est.stderr_ : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  report.passed = std::abs(gap) <= 3.0 * est.stderr_;
  return report;
}

}  // namespace ric
