#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smallest admissible eigenvalue of the covariance matrix.
inline constexpr double kSingularityThreshold = 1e-12;

/// Scalar function of time, piecewise constant between breakpoints.
///
/// `values[0]` applies on [0, breakpoints[0]), `values[i]` on
/// [breakpoints[i-1], breakpoints[i]), and the last value from the last
/// breakpoint onward. A curve with no breakpoints is a constant.
class RateCurve {
 public:
  RateCurve() = default;
  RateCurve(double constant);  // NOLINT(google-explicit-constructor)
  RateCurve(std::vector<double> breakpoints, std::vector<double> values);

  [[nodiscard]] double operator()(double t) const;

  /// Exact integral over [a, b] (a <= b).
  [[nodiscard]] double integral(double a, double b) const;

  [[nodiscard]] bool is_constant() const { return breakpoints_.empty(); }
  [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_{0.0};
};

/// Financial-market primitives plus the investor's utility parameters.
///
/// Drift and volatility are constant in time; the interest and discount
/// rates may be piecewise constant.
struct MarketModel {
  double horizon = 1.0;            ///< T, years
  RateCurve rate;                  ///< r(t), per year
  RateCurve discount;              ///< rho(t), per year
  Vector drift;                    ///< mu, m-vector
  Matrix volatility;               ///< sigma, m x n
  double risk_aversion = 2.0;      ///< gamma, excludes 1
  double bequest_weight = 1.0;     ///< beta
  double initial_wealth = 1.0;     ///< x0

  [[nodiscard]] std::size_t num_assets() const {
    return static_cast<std::size_t>(volatility.rows());
  }
  [[nodiscard]] std::size_t num_factors() const {
    return static_cast<std::size_t>(volatility.cols());
  }
};

/// Per-factor ambiguity-aversion weights. H = diag(eta) is derived on demand.
struct AmbiguityProfile {
  Vector eta;

  static AmbiguityProfile neutral(std::size_t n) { return {Vector::Zero(static_cast<Eigen::Index>(n))}; }

  [[nodiscard]] bool is_neutral() const { return (eta.array() == 0.0).all(); }

  /// d = 1 + eta / gamma, the diagonal of I + H / gamma.
  [[nodiscard]] Vector scale(double gamma) const {
    return (1.0 + eta.array() / gamma).matrix();
  }
};

/// Sigma = sigma sigma^T. Throws SingularCovarianceError.
[[nodiscard]] Matrix covariance(const MarketModel& model);

/// theta = sigma^T Sigma^{-1} (mu - r(t) 1). Throws SingularCovarianceError.
[[nodiscard]] Vector market_price_of_risk(const MarketModel& model, double t = 0.0);

/// Every violated invariant, or an empty list when the inputs are usable.
[[nodiscard]] std::vector<std::string> validate(const MarketModel& model,
                                                const AmbiguityProfile& profile);

}  // namespace ric
