#include "ric/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ric/errors.hpp"

namespace ric {

Vector optimal_exposure(const Vector& theta, const Vector& eta, double gamma,
                        const ExposureSet& scaled_set, double y, const Vector& z) {
  const Vector inv_root = (1.0 + eta.array() / gamma).sqrt().inverse().matrix();
  const Vector target =
      theta / gamma + (1.0 - eta.array() / (1.0 - gamma)).matrix().cwiseProduct(z) / y;
  return inv_root.cwiseProduct(project(scaled_set, inv_root.cwiseProduct(target)));
}

double optimal_consumption(double y, const ConsumptionBand& band) {
  return clamp_consumption(band, 1.0 / y);
}

Vector optimal_distortion(const Vector& theta, const Vector& eta, double gamma,
                          const ExposureSet& scaled_set, double y, const Vector& z) {
  const Vector p = optimal_exposure(theta, eta, gamma, scaled_set, y, z);
  return -eta.cwiseProduct(gamma / (1.0 - gamma) * z / y + p);
}

ExposureAndDistortion no_short_sale_strategy(const Vector& theta, const Vector& eta, double gamma) {
  Vector p = theta.cwiseMax(0.0).cwiseQuotient((gamma + eta.array()).matrix());
  Vector phi = -eta.cwiseProduct(p);
  return {std::move(p), std::move(phi)};
}

Vector suboptimal_distortion(const Vector& theta, const Vector& eta, double gamma,
                             const ExposureSet& exposure_set, double ytilde, const Vector& ztilde,
                             double y0, const Vector& z0) {
  const Vector p0 = project(exposure_set, theta / gamma + z0 / y0);
  return -(gamma / (1.0 - gamma)) * eta.cwiseProduct(ztilde) / ytilde - eta.cwiseProduct(p0);
}

double value_function(double x, double y, double gamma) {
  return std::pow(x, 1.0 - gamma) * std::pow(y, gamma) / (1.0 - gamma);
}

double utility_loss(double y, double ytilde, double gamma) {
  const double loss = 1.0 - std::pow(ytilde / y, gamma / (1.0 - gamma));
  if (!(loss >= -1e-8 && loss <= 1.0 + 1e-8)) {
    std::ostringstream msg;
    msg << "utility loss " << loss << " outside [0, 1] (Y = " << y << ", Ytilde = " << ytilde
        << "); the curves are inconsistent";
    throw OutOfRangeError(msg.str());
  }
  return loss;
}

StrategySnapshot StrategyCurves::snapshot(const TimeGrid& grid, std::size_t k) const {
  return {grid.node(k), p_star.at(k), c_star.at(k), phi_star.at(k), value.at(k), loss.at(k)};
}

StrategyCurves evaluate_strategy(const Problem& problem, const SolutionCurves& curves) {
  const auto& grid = curves.grid;
  const double g = problem.gamma();
  const Vector& eta = problem.ambiguity.eta;
  const ExposureSet scaled = problem.scaled_exposure();
  const Vector zero = Vector::Zero(eta.size());

  StrategyCurves out;
  const std::size_t size = grid.size();
  for (auto* v : {&out.p_star, &out.phi_star, &out.p_neutral, &out.phi_tilde}) v->resize(size);
  for (auto* v : {&out.c_star, &out.c_neutral, &out.value, &out.loss}) v->resize(size);

  for (std::size_t k = 0; k < size; ++k) {
    const double t = grid.node(k);
    const Vector theta = market_price_of_risk(problem.market, t);
    out.p_star[k] = optimal_exposure(theta, eta, g, scaled, curves.y[k], zero);
    out.phi_star[k] = -eta.cwiseProduct(out.p_star[k]);
    out.c_star[k] = optimal_consumption(curves.y[k], problem.band);
    out.p_neutral[k] = project(problem.exposure, theta / g);
    out.c_neutral[k] = optimal_consumption(curves.y0[k], problem.band);
    out.phi_tilde[k] = suboptimal_distortion(theta, eta, g, problem.exposure, curves.ytilde[k],
                                             zero, curves.y0[k], zero);
    out.value[k] = value_function(1.0, curves.y[k], g);
    out.loss[k] = utility_loss(curves.y[k], curves.ytilde[k], g);
  }
  return out;
}

OrderingCheck check_le(std::string label, const std::vector<double>& lhs,
                       const std::vector<double>& rhs, double slack) {
  if (lhs.size() != rhs.size()) throw DomainError("compared curves differ in length");
  OrderingCheck out{std::move(label), true, -std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const double excess = lhs[k] - rhs[k];
    if (excess > out.worst_excess) {
      out.worst_excess = excess;
      out.worst_node = k;
    }
  }
  out.holds = out.worst_excess <= slack;
  return out;
}

std::vector<CaseSpec> standard_cases() {
  return {
      {"C1", NonnegativeOrthant{}, {0.0, 1.0}},
      {"C2", NonnegativeOrthant{}, {0.2, kUnbounded}},
      {"C3", NonnegativeOrthant{}, {0.0, kUnbounded}},
      {"C4", FullSpace{}, {0.0, 1.0}},
      {"C5", FullSpace{}, {0.2, kUnbounded}},
      {"NC", FullSpace{}, {0.0, kUnbounded}},
  };
}

bool CaseSuite::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

void CaseSuite::require_orderings() const {
  for (const auto& c : checks) {
    if (!c.holds) {
      std::ostringstream msg;
      msg << "ordering violated: " << c.label << " (excess " << c.worst_excess << " at node "
          << c.worst_node << ")";
      throw OrderingViolationError(msg.str());
    }
  }
}

const CaseResult* CaseSuite::find(const std::string& name) const {
  const auto it =
      std::find_if(cases.begin(), cases.end(), [&](const auto& c) { return c.name == name; });
  return it == cases.end() ? nullptr : &*it;
}

CaseSuite run_case_suite(const MarketModel& market, const AmbiguityProfile& ambiguity,
                         const std::vector<CaseSpec>& cases, const TimeGrid& grid) {
  CaseSuite suite;
  for (const auto& spec : cases) {
    Problem problem{market, ambiguity, spec.exposure, spec.band};
    auto curves = solve_curves(problem, grid);
    auto strategy = evaluate_strategy(problem, curves);
    suite.cases.push_back({spec.name, std::move(problem), std::move(curves), std::move(strategy)});
  }

  const bool high = market.risk_aversion > 1.0;
  enum class Quantity { consumption, value };
  const auto add = [&](const char* tag, Quantity q, const char* lo, const char* hi) {
    const auto* a = suite.find(lo);
    const auto* b = suite.find(hi);
    if (a == nullptr || b == nullptr) return;
    const char* symbol = q == Quantity::consumption ? "c*" : "V";
    std::string label = std::string(tag) + " " + symbol + "[" + lo + "] <= " + symbol + "[" + hi + "]";
    const auto& lhs = q == Quantity::consumption ? a->strategy.c_star : a->strategy.value;
    const auto& rhs = q == Quantity::consumption ? b->strategy.c_star : b->strategy.value;
    suite.checks.push_back(check_le(std::move(label), lhs, rhs));
  };

  const std::pair<const char*, const char*> relaxations[] = {{"C1", "C4"}, {"C2", "C5"}, {"C3", "NC"}};
  for (const auto& [lo, hi] : relaxations) {
    if (high) {
      add("(i)", Quantity::consumption, lo, hi);
    } else {
      add("(i')", Quantity::consumption, hi, lo);
    }
  }
  for (const auto& [lo, hi] : relaxations) add("(ii)", Quantity::value, lo, hi);

  // Consumption bounds against the unbounded case, with and without short-selling.
  const std::pair<const char*, const char*> bounded[] = {{"C3", "C1"}, {"C2", "C3"}, {"NC", "C4"}, {"C5", "NC"}};
  for (const auto& [lo, hi] : bounded) {
    if (high) {
      add("(iii)", Quantity::value, lo, hi);
    } else {
      add("(iii')", Quantity::value, hi, lo);
    }
  }
  return suite;
}

bool SweepResult::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

void SweepResult::require_monotone() const {
  for (const auto& c : checks) {
    if (!c.holds) {
      std::ostringstream msg;
      msg << "monotonicity violated: " << c.label << " (excess " << c.worst_excess
          << " at node " << c.worst_node << ")";
      throw OrderingViolationError(msg.str());
    }
  }
}

SweepResult eta_sweep(const Problem& base, std::size_t index, const std::vector<double>& values,
                      const TimeGrid& grid) {
  if (!base.exposure.is_orthant()) {
    throw DomainError("ambiguity sweep requires the nonnegative-orthant constraint");
  }
  if (index >= base.market.num_factors()) throw DomainError("sweep index out of range");
  if (values.empty()) throw DomainError("sweep needs at least one value");

  SweepResult out;
  out.index = index;
  out.values = values;
  for (double v : values) {
    Problem p = base;
    p.ambiguity.eta[static_cast<Eigen::Index>(index)] = v;
    auto curves = solve_curves(p, grid);
    out.strategy.push_back(evaluate_strategy(p, curves));
    out.curves.push_back(std::move(curves));
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const bool high = base.gamma() > 1.0;
  const auto name = [&](std::size_t i) {
    std::ostringstream s;
    s << "eta" << index + 1 << "=" << values[i];
    return s.str();
  };
  for (std::size_t j = 1; j < order.size(); ++j) {
    const std::size_t lo = order[j - 1];
    const std::size_t hi = order[j];
    const auto& a = out.strategy[lo];
    const auto& b = out.strategy[hi];
    if (high) {
      out.checks.push_back(
          check_le("c*[" + name(hi) + "] <= c*[" + name(lo) + "]", b.c_star, a.c_star));
    } else {
      out.checks.push_back(
          check_le("c*[" + name(lo) + "] <= c*[" + name(hi) + "]", a.c_star, b.c_star));
    }
    out.checks.push_back(check_le("V[" + name(hi) + "] <= V[" + name(lo) + "]", b.value, a.value));
  }
  return out;
}

}  // namespace ric
