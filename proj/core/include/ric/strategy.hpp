#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ric/detsolve.hpp"

namespace ric {

/// Slack applied to every pointwise comparison between solved curves.
inline constexpr double kOrderingSlack = 1e-8;

/// Strategy, value and loss at one time point.
struct StrategySnapshot {
  double t = 0.0;
  Vector p_star;
  double c_star = 0.0;
  Vector phi_star;
  double value = 0.0;  ///< V(t, 1)
  double loss = 0.0;   ///< L(t)
};

// -- Pointwise formulas -------------------------------------------------------

/// p* = d^{-1/2} Proj_{scaled_set}(d^{-1/2} [theta/gamma + (1 - eta/(1-gamma)) z/y]),
/// d = 1 + eta/gamma. `scaled_set` is the image of the constraint set under d^{1/2}.
[[nodiscard]] Vector optimal_exposure(const Vector& theta, const Vector& eta, double gamma,
                                      const ExposureSet& scaled_set, double y, const Vector& z);

/// clamp(1/y, band.lower, band.upper).
[[nodiscard]] double optimal_consumption(double y, const ConsumptionBand& band);

/// phi* = -eta [(gamma/(1-gamma)) z/y + p*].
[[nodiscard]] Vector optimal_distortion(const Vector& theta, const Vector& eta, double gamma,
                                        const ExposureSet& scaled_set, double y, const Vector& z);

struct ExposureAndDistortion {
  Vector exposure;
  Vector distortion;
};

/// Closed form under a short-selling ban: p* = theta+ / (gamma + eta), phi* = -eta p*.
[[nodiscard]] ExposureAndDistortion no_short_sale_strategy(const Vector& theta, const Vector& eta,
                                                           double gamma);

/// Worst-case distortion faced by an investor who ignores ambiguity:
/// -(gamma eta/(1-gamma)) ztilde/ytilde - eta Proj_{exposure_set}(theta/gamma + z0/y0).
/// `exposure_set` is the set the ambiguity-neutral investor projects onto.
[[nodiscard]] Vector suboptimal_distortion(const Vector& theta, const Vector& eta, double gamma,
                                           const ExposureSet& exposure_set, double ytilde,
                                           const Vector& ztilde, double y0, const Vector& z0);

/// V = x^{1-gamma} y^gamma / (1 - gamma).
[[nodiscard]] double value_function(double x, double y, double gamma);

/// L = 1 - (ytilde/y)^{gamma/(1-gamma)}. Throws OutOfRangeError outside [-1e-8, 1 + 1e-8].
[[nodiscard]] double utility_loss(double y, double ytilde, double gamma);

// -- Curves -------------------------------------------------------------------

/// Deterministic strategies on every grid node.
struct StrategyCurves {
  std::vector<Vector> p_star;
  std::vector<Vector> phi_star;
  std::vector<double> c_star;
  std::vector<Vector> p_neutral;    ///< exposure of the ambiguity-neutral investor
  std::vector<double> c_neutral;    ///< consumption of the ambiguity-neutral investor
  std::vector<Vector> phi_tilde;    ///< distortion faced by that investor
  std::vector<double> value;        ///< V(t, 1)
  std::vector<double> loss;         ///< L(t)

  [[nodiscard]] StrategySnapshot snapshot(const TimeGrid& grid, std::size_t k) const;
};

/// Evaluates the strategy formulas with z = 0 on every node of `curves.grid`.
[[nodiscard]] StrategyCurves evaluate_strategy(const Problem& problem, const SolutionCurves& curves);

// -- Comparative statics ------------------------------------------------------

/// One pointwise inequality between two curves.
struct OrderingCheck {
  std::string label;
  bool holds = true;
  double worst_excess = 0.0;  ///< max over nodes of (lhs - rhs); <= slack when it holds
  std::size_t worst_node = 0;
};

/// Pointwise lhs <= rhs + slack on every node.
[[nodiscard]] OrderingCheck check_le(std::string label, const std::vector<double>& lhs,
                                     const std::vector<double>& rhs, double slack = kOrderingSlack);

/// A constraint configuration (short-selling rule and consumption band).
struct CaseSpec {
  std::string name;
  ExposureSet exposure;
  ConsumptionBand band;
};

/// The six configurations C1..C5 and NC.
[[nodiscard]] std::vector<CaseSpec> standard_cases();

struct CaseResult {
  std::string name;
  Problem problem;
  SolutionCurves curves;
  StrategyCurves strategy;
};

struct CaseSuite {
  std::vector<CaseResult> cases;
  std::vector<OrderingCheck> checks;

  [[nodiscard]] bool all_hold() const;
  /// Throws OrderingViolationError naming the first violated inequality.
  void require_orderings() const;
  [[nodiscard]] const CaseResult* find(const std::string& name) const;
};

/// Solves every case and checks the consumption and value orderings between
/// cases named C1..C5 and NC; pairs with a missing case are skipped.
[[nodiscard]] CaseSuite run_case_suite(const MarketModel& market, const AmbiguityProfile& ambiguity,
                                       const std::vector<CaseSpec>& cases, const TimeGrid& grid);

struct SweepResult {
  std::size_t index = 0;
  std::vector<double> values;
  std::vector<SolutionCurves> curves;
  std::vector<StrategyCurves> strategy;
  std::vector<OrderingCheck> checks;

  [[nodiscard]] bool all_hold() const;
  /// Throws OrderingViolationError naming the first violated inequality.
  void require_monotone() const;
};

/// Re-solves `base` with eta[index] (0-based) set to each value and checks that
/// V(t, 1) is nonincreasing in that weight, and c*(t) nonincreasing for
/// gamma > 1, nondecreasing for gamma < 1. Requires the nonnegative orthant.
[[nodiscard]] SweepResult eta_sweep(const Problem& base, std::size_t index,
                                    const std::vector<double>& values, const TimeGrid& grid);

}  // namespace ric
