#include "ric/market.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ric/errors.hpp"

namespace ric {

RateCurve::RateCurve(double constant) : values_{constant} {}

RateCurve::RateCurve(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw DomainError("rate curve needs exactly one more value than breakpoints");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end()) {
    throw DomainError("rate curve breakpoints must be strictly increasing");
  }
}

double RateCurve::operator()(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double RateCurve::integral(double a, double b) const {
  double total = 0.0;
  double left = a;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  auto piece = static_cast<std::size_t>(it - breakpoints_.begin());
  while (it != breakpoints_.end() && *it < b) {
    total += values_[piece] * (*it - left);
    left = *it;
    ++it;
    ++piece;
  }
  return total + values_[piece] * (b - left);
}

namespace {

Eigen::LLT<Matrix> factorize(const Matrix& cov) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > kSingularityThreshold)) {
    std::ostringstream msg;
    msg << "covariance matrix is singular (smallest eigenvalue " << smallest << ")";
    throw SingularCovarianceError(msg.str());
  }
  return Eigen::LLT<Matrix>(cov);
}

}  // namespace

Matrix covariance(const MarketModel& model) {
  Matrix cov = model.volatility * model.volatility.transpose();
  // Symmetrize exactly; the product is symmetric only up to rounding.
  cov = 0.5 * (cov + cov.transpose()).eval();
  factorize(cov);
  return cov;
}

Vector market_price_of_risk(const MarketModel& model, double t) {
  Matrix cov = model.volatility * model.volatility.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  const auto llt = factorize(cov);
  const Vector premium = model.drift.array() - model.rate(t);
  return model.volatility.transpose() * llt.solve(premium);
}

std::vector<std::string> validate(const MarketModel& model, const AmbiguityProfile& profile) {
  std::vector<std::string> errors;
  const double gamma = model.risk_aversion;
  if (gamma == 1.0) {
    errors.emplace_back("log-utility excluded: risk aversion must differ from 1");
  } else if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    errors.emplace_back("risk aversion must be positive and finite");
  }
  if (!(model.bequest_weight > 0.0)) errors.emplace_back("bequest weight must be positive");
  if (!(model.initial_wealth > 0.0)) errors.emplace_back("initial wealth must be positive");
  if (!(model.horizon > 0.0)) errors.emplace_back("horizon must be positive");

  const auto m = model.num_assets();
  const auto n = model.num_factors();
  bool shapes_ok = true;
  if (m == 0 || n == 0) {
    errors.emplace_back("volatility matrix is empty");
    shapes_ok = false;
  }
  if (m > n) {
    errors.emplace_back("more assets than Brownian factors");
    shapes_ok = false;
  }
  if (static_cast<std::size_t>(model.drift.size()) != m) {
    errors.emplace_back("dimension mismatch: drift length differs from number of assets");
    shapes_ok = false;
  }
  if (static_cast<std::size_t>(profile.eta.size()) != n) {
    errors.emplace_back("dimension mismatch: ambiguity weights differ from number of factors");
  } else if ((profile.eta.array() < 0.0).any()) {
    errors.emplace_back("negative ambiguity weight");
  }
  if (!model.volatility.allFinite() || !model.drift.allFinite()) {
    errors.emplace_back("market coefficients must be finite");
    shapes_ok = false;
  }
  if (shapes_ok) {
    try {
      static_cast<void>(covariance(model));
    } catch (const SingularCovarianceError& e) {
      errors.emplace_back(e.what());
    }
  }
  return errors;
}

}  // namespace ric
