#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ric/strategy.hpp"

namespace ric {

struct SimConfig {
  std::size_t paths = 50'000;
  TimeGrid grid{1.0, 100};
  std::uint64_t seed = 12345;
  bool antithetic = true;     ///< pairs path 2j with the mirrored path 2j+1
  unsigned threads = 0;       ///< 0 = hardware concurrency
  bool record_paths = false;  ///< keep every X(t_k); memory is paths x nodes
};

/// Exposure, consumption rate and distortion sampled on every grid node.
struct ControlCurves {
  std::vector<Vector> exposure;
  std::vector<double> consumption;
  std::vector<Vector> distortion;
};

/// Per-path results of a wealth simulation under the distorted measure.
struct PathBatch {
  std::size_t paths = 0;
  bool antithetic = false;
  std::vector<double> terminal_wealth;
  std::vector<double> min_wealth;
  /// int_0^T e^{-int rho} U1(c X) ds, trapezoid in time.
  std::vector<double> consumption_utility;
  /// int_0^T e^{-int rho} (1/2) phi' H^{-1} phi X^{1-gamma} Y^gamma ds; zero-weight factors skipped.
  std::vector<double> penalty;
  /// Row-major paths x nodes when SimConfig::record_paths is set, otherwise empty.
  std::vector<double> wealth;
};

/// Log-Euler simulation of dX = X[r + p'(theta + phi) - c] dt + X p' dW, with W a
/// Brownian motion under the measure induced by `controls.distortion`. The
/// consumption and penalty integrals are accumulated along the way, the latter
/// needing the value curve Y. Per-path random streams are counter-based, so the
/// batch depends only on (seed, config) and not on the thread count.
[[nodiscard]] PathBatch simulate_wealth(const Problem& problem, const ControlCurves& controls,
                                        std::span<const double> value_curve,
                                        const SimConfig& sim);

struct ObjectiveEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;  ///< independent units (pairs when antithetic)
};

/// Path average of the penalized objective: consumption utility + penalty +
/// e^{-int_0^T rho} beta X_T^{1-gamma}/(1-gamma).
[[nodiscard]] ObjectiveEstimate estimate_objective(const Problem& problem, const PathBatch& batch);

struct ConsistencyReport {
  std::string label;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double analytic = 0.0;  ///< V(0, x0)
  double z_score = 0.0;
  std::size_t paths = 0;
  bool passed = false;

  /// Throws ConsistencyError with the numbers above when the check failed.
  void require_pass() const;
};

/// The optimal controls of `problem` on `grid` together with Y.
struct OptimalControls {
  ControlCurves controls;
  std::vector<double> y;
};
[[nodiscard]] OptimalControls optimal_controls(const Problem& problem, const TimeGrid& grid);

/// Solves the problem on sim.grid, simulates its optimal strategy under the
/// worst-case measure and compares the estimate with V(0, x0) at 3 standard errors.
[[nodiscard]] ConsistencyReport check_value_consistency(const Problem& problem,
                                                        const SimConfig& sim);

}  // namespace ric
