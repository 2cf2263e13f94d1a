// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "projection_axioms.hpp"
#include "ric/errors.hpp"
#include "ric/simulate.hpp"

namespace {

using namespace ric;
using ric::testing::table1_problem;

// Tolerances.
constexpr double kFourDecimals = 5e-5;
constexpr double kOdeAbs = 1e-8;
constexpr double kOrder = 3.5;
constexpr double kBernoulliAbs = 1e-6;
constexpr double kDriverRel = 1e-12;
constexpr double kNeutralAbs = 1e-6;
constexpr double kLossFloor = -1e-8;
constexpr double kSlack = 1e-8;
constexpr double kZ = 3.0;

// Runtime budgets, seconds.
constexpr double kBudgetTheta = 1e-3;
constexpr double kBudgetTable3 = 1e-3;
constexpr double kBudgetBernoulli = 1.0;
constexpr double kBudgetSweep = 5.0;
constexpr double kBudgetOrderings = 10.0;
constexpr double kBudgetPerScenario = 60.0;

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Clock {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

ExposureSet set_of(bool orthant) {
  return orthant ? ExposureSet(NonnegativeOrthant{}) : ExposureSet(FullSpace{});
}

// 1 ---------------------------------------------------------------------------
Outcome theta_reproduction() {
  const MarketModel market = ric::testing::table1_market();
  const Clock clock;
  const Vector theta = market_price_of_risk(market);
  const double elapsed = clock.seconds();
  const double expected[3] = {4.7396, 0.8333, -3.0729};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(theta[i] - expected[i]));
  return {worst <= kFourDecimals && elapsed < kBudgetTheta,
          "max |diff| " + fmt(worst) + ", " + fmt(elapsed * 1e3) + " ms"};
}

// 2 ---------------------------------------------------------------------------
Outcome table3_reproduction() {
  struct Row {
    double gamma;
    bool orthant;
    bool neutral;
    double p[3];
    double phi[3];
  };
  const Row rows[] = {
      {4.0, false, false, {0.9479, 0.1190, -0.3414}, {-0.9479, -0.3571, 1.7072}},
      {4.0, false, true, {1.1849, 0.2083, -0.7682}, {0, 0, 0}},
      {4.0, true, false, {0.9479, 0.1190, 0}, {-0.9479, -0.3571, 0}},
      {4.0, true, true, {1.1849, 0.2083, 0}, {0, 0, 0}},
      {0.9, false, false, {2.4945, 0.2137, -0.5208}, {-2.4945, -0.6410, 2.6042}},
      {0.9, false, true, {5.2662, 0.9259, -3.4144}, {0, 0, 0}},
      {0.9, true, false, {2.4945, 0.2137, 0}, {-2.4945, -0.6410, 0}},
      {0.9, true, true, {5.2662, 0.9259, 0}, {0, 0, 0}},
  };
  const Vector theta = market_price_of_risk(ric::testing::table1_market());
  const Vector zero = Vector::Zero(3);
  const Clock clock;
  double worst = 0.0;
  int entries = 0;
  for (const auto& row : rows) {
    const Vector eta = row.neutral ? zero : ric::testing::table1_ambiguity().eta;
    const ExposureSet scaled = scale_set(set_of(row.orthant), (1.0 + eta.array() / row.gamma).matrix());
    const Vector p = optimal_exposure(theta, eta, row.gamma, scaled, 1.0, zero);
    const Vector phi = optimal_distortion(theta, eta, row.gamma, scaled, 1.0, zero);
    for (int i = 0; i < 3; ++i) {
      worst = std::max({worst, std::abs(p[i] - row.p[i]), std::abs(phi[i] - row.phi[i])});
      entries += 2;
    }
  }
  const double elapsed = clock.seconds();
  return {worst <= kFourDecimals && elapsed < kBudgetTable3,
          std::to_string(entries) + " entries, max |diff| " + fmt(worst) + ", " +
              fmt(elapsed * 1e3) + " ms"};
}

// 3 ---------------------------------------------------------------------------
double constant_q_error(const Problem& p, std::size_t steps) {
  const TimeGrid grid(p.market.horizon, steps);
  const double q = q_coefficient(p, 0.0);
  const double terminal = std::pow(p.market.bequest_weight, 1.0 / p.gamma());
  const auto y = integrate_y(p, grid);
  double err = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double tau = grid.horizon() - grid.node(k);
    err = std::max(err, std::abs(y[k] - (std::exp(q * tau) * (terminal + 1.0 / q) - 1.0 / q)));
  }
  return err;
}

Outcome ode_correctness() {
  double worst = 0.0;
  double min_order = INFINITY;
  for (double gamma : {4.0, 0.9}) {
    for (bool orthant : {false, true}) {
      const Problem p = table1_problem(gamma, set_of(orthant));
      worst = std::max(worst, constant_q_error(p, 3000));
      const double e1 = constant_q_error(p, 20);
      const double e2 = constant_q_error(p, 40);
      const double e3 = constant_q_error(p, 80);
      min_order = std::min({min_order, std::log2(e1 / e2), std::log2(e2 / e3)});
    }
  }
  return {worst <= kOdeAbs && min_order >= kOrder,
          "max error " + fmt(worst) + " at N=3000, min observed order " + fmt(min_order)};
}

// 4 ---------------------------------------------------------------------------
Outcome bernoulli_consistency() {
  const TimeGrid grid(3.0, 3000);
  const Clock clock;
  double worst = 0.0;
  int configs = 0;
  for (double gamma : {4.0, 0.9}) {
    for (const auto& spec : standard_cases()) {
      const Problem p = table1_problem(gamma, spec.exposure, spec.band);
      const auto curves = solve_curves(p, grid);
      const auto closed = closed_form_ytilde(p, curves.y0, grid);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, std::abs(curves.ytilde[k] - closed[k]));
      }
      ++configs;
    }
  }
  const double elapsed = clock.seconds();
  return {worst <= kBernoulliAbs && elapsed < kBudgetBernoulli,
          std::to_string(configs) + " configurations, max |diff| " + fmt(worst) + ", " +
              fmt(elapsed) + " s"};
}

// 5 ---------------------------------------------------------------------------
Outcome driver_reductions() {
  std::mt19937_64 rng(2024);
  const ConsumptionBand bands[] = {{}, {0.2, 1.0}, {0.0, 1.0}, {0.2, kUnbounded}};
  const Vector zero = Vector::Zero(3);
  double worst = 0.0;
  double naive = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double gamma = ric::testing::uniform(rng, 0.2, 8.0);
    if (std::abs(gamma - 1.0) < 0.05) gamma = 3.0;
    Problem p = table1_problem(gamma, set_of(i % 2 == 0), bands[i % 4]);
    p.ambiguity.eta = ric::testing::random_vector(rng, 3, 0.0, 5.0);
    const double t = ric::testing::uniform(rng, 0.0, 3.0);
    const double y = ric::testing::uniform(rng, 0.05, 6.0);
    const double y0 = ric::testing::uniform(rng, 0.05, 6.0);
    const double g_term = y / p.band.clamp_level(y);

    // Relative to the larger of |b| and the summed term magnitudes, so that points
    // where the terms nearly cancel are judged against the rounding they carry.
    const auto rel = [&](double a, double b, double terms) {
      naive = std::max(naive, std::abs(a - b) / std::abs(b));
      return std::abs(a - b) / std::max(std::abs(b), terms);
    };
    const double qy = q_coefficient(p, t) * y;
    const double q0y = q_coefficient(p.ambiguity_neutral(), t) * y;
    worst = std::max(worst, rel(driver_f(p, t, y, zero), g_term + qy, g_term + std::abs(qy)));
    worst = std::max(worst, rel(driver_f0(p, t, y, zero), g_term + q0y, g_term + std::abs(q0y)));
    const double k = p.band.clamp_level(y0);
    const double power = std::pow(y / k, 1.0 - gamma);
    const double qty = qtilde_coefficient(p, y0, t) * y;
    worst = std::max(worst, rel(driver_ftilde(p, t, y, zero, y0, zero), (power + qty) / gamma,
                                (power + std::abs(qty)) / gamma));
  }
  return {worst <= kDriverRel, "1000 points, max relative gap " + fmt(worst) +
                                  " (against |value| alone " + fmt(naive) + ")"};
}

// 6 ---------------------------------------------------------------------------
Outcome neutral_degeneracy() {
  const TimeGrid grid(3.0, 600);
  double curve_gap = 0.0;
  double max_loss = 0.0;
  double banded_gap = 0.0;
  for (double gamma : {4.0, 0.9}) {
    for (const auto& spec : standard_cases()) {
      const Problem p = table1_problem(gamma, spec.exposure, spec.band, true);
      const auto curves = solve_curves(p, grid);
      double gap = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) gap = std::max(gap, std::abs(curves.ytilde[k] - curves.y[k]));
      if (!spec.band.is_unconstrained()) {
        banded_gap = std::max(banded_gap, gap);
        continue;
      }
      curve_gap = std::max(curve_gap, gap);
      for (double l : evaluate_strategy(p, curves).loss) max_loss = std::max(max_loss, l);
    }
  }
  return {curve_gap <= kNeutralAbs && max_loss <= kNeutralAbs,
          "consumption band [0, inf]: max |Ytilde - Y| " + fmt(curve_gap) + ", max L " +
              fmt(max_loss) + " (binding bands, informational: " + fmt(banded_gap) + ")"};
}

// 7 ---------------------------------------------------------------------------
std::vector<Problem> experiment_configurations() {
  std::vector<Problem> out;
  for (double gamma : {4.0, 0.9}) {
    for (const auto& spec : standard_cases()) out.push_back(table1_problem(gamma, spec.exposure, spec.band));
    for (double eta1 = 0.0; eta1 <= 5.0; eta1 += 1.0) {
      Problem p = table1_problem(gamma, NonnegativeOrthant{});
      p.ambiguity.eta[0] = eta1;
      out.push_back(p);
    }
    for (bool orthant : {false, true}) {
      for (double cap : {1.0, 0.8, 0.6}) out.push_back(table1_problem(gamma, set_of(orthant), {0.0, cap}));
    }
  }
  return out;
}

Outcome loss_range() {
  const TimeGrid grid(3.0, 600);
  double lo = INFINITY;
  double hi = -INFINITY;
  int failures = 0;
  const auto configs = experiment_configurations();
  for (const auto& p : configs) {
    const auto curves = solve_curves(p, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double l = 1.0 - std::pow(curves.ytilde[k] / curves.y[k], p.gamma() / (1.0 - p.gamma()));
      lo = std::min(lo, l);
      hi = std::max(hi, l);
      if (l < kLossFloor || l > 1.0) ++failures;
    }
  }
  return {failures == 0, std::to_string(configs.size()) + " configurations, L in [" + fmt(lo) +
                             ", " + fmt(hi) + "]"};
}

// 8 ---------------------------------------------------------------------------
Outcome proposition4() {
  const TimeGrid grid(3.0, 600);
  const Clock clock;
  int checks = 0;
  int failed = 0;
  for (double gamma : {4.0, 0.9}) {
    const auto sweep = eta_sweep(table1_problem(gamma, NonnegativeOrthant{}), 0, {0, 1, 2, 3, 4, 5}, grid);
    for (const auto& c : sweep.checks) {
      ++checks;
      if (!c.holds || c.worst_excess > kSlack) ++failed;
    }
  }
  const double elapsed = clock.seconds();
  return {failed == 0 && checks == 20 && elapsed < kBudgetSweep,
          std::to_string(checks - failed) + "/" + std::to_string(checks) + " inequalities, " +
              fmt(elapsed) + " s"};
}

// 9 ---------------------------------------------------------------------------
Outcome proposition5() {
  const TimeGrid grid(3.0, 600);
  const Clock clock;
  int checks = 0;
  int failed = 0;
  std::string first_failure;
  for (double gamma : {4.0, 0.9}) {
    const auto suite = run_case_suite(ric::testing::table1_market(gamma),
                                      ric::testing::table1_ambiguity(), standard_cases(), grid);
    for (const auto& c : suite.checks) {
      ++checks;
      if (!c.holds || c.worst_excess > kSlack) {
        if (failed++ == 0) first_failure = ", first failure " + c.label;
      }
    }
  }
  const double elapsed = clock.seconds();
  return {failed == 0 && checks == 20 && elapsed < kBudgetOrderings,
          std::to_string(checks - failed) + "/" + std::to_string(checks) + " inequalities, " +
              fmt(elapsed) + " s" + first_failure};
}

// 10 --------------------------------------------------------------------------
Outcome projection_axioms() {
  const ExposureSet sets[] = {
      FullSpace{}, NonnegativeOrthant{},
      Box{(Vector(3) << -1.0, 0.0, -kUnbounded).finished(), (Vector(3) << 1.0, 2.0, 0.5).finished()}};
  int violations = 0;
  std::uint64_t seed = 1;
  for (const auto& set : sets) {
    const auto tally = ric::testing::check_projection_axioms(set, 3, 10'000, seed++);
    violations += tally.idempotence + tally.nonexpansive + tally.variational + tally.pythagoras;
  }
  return {violations == 0, "3 set types x 10^4 vectors, " + std::to_string(violations) + " violations"};
}

// 11 --------------------------------------------------------------------------
Outcome monte_carlo() {
  SimConfig sim;
  sim.paths = 50'000;
  sim.grid = TimeGrid(3.0, 600);
  sim.seed = 12345;
  int passed = 0;
  std::string detail;
  double slowest = 0.0;
  for (double gamma : {4.0, 0.9}) {
    for (int c = 1; c <= 4; ++c) {
      const bool orthant = c >= 3;
      const bool neutral = c % 2 == 0;
      const Clock clock;
      const auto report = check_value_consistency(table1_problem(gamma, set_of(orthant), {}, neutral), sim);
      slowest = std::max(slowest, clock.seconds());
      if (report.passed) ++passed;
      detail += " g" + fmt(gamma) + "/case" + std::to_string(c) + " z=" + fmt(report.z_score);
    }
  }
  return {passed == 8 && slowest < kBudgetPerScenario,
          std::to_string(passed) + "/8 within 3 stderr, slowest " + fmt(slowest) + " s;" + detail};
}

// 12 --------------------------------------------------------------------------
Outcome figure_patterns() {
  const TimeGrid grid(3.0, 600);
  const auto loss = [&](const Problem& p) { return evaluate_strategy(p, solve_curves(p, grid)).loss; };
  int checks = 0;
  int failed = 0;
  for (double gamma : {4.0, 0.9}) {
    ++checks;
    if (!check_le("", loss(table1_problem(gamma, NonnegativeOrthant{})),
                  loss(table1_problem(gamma, FullSpace{})), kSlack).holds) {
      ++failed;
    }
    std::vector<std::vector<double>> by_cap;
    for (double cap : {1.0, 0.8, 0.6}) by_cap.push_back(loss(table1_problem(gamma, NonnegativeOrthant{}, {0.0, cap})));
    for (std::size_t j = 1; j < by_cap.size(); ++j) {
      ++checks;
      const bool ok = gamma > 1.0 ? check_le("", by_cap[j - 1], by_cap[j], kSlack).holds
                                  : check_le("", by_cap[j], by_cap[j - 1], kSlack).holds;
      if (!ok) ++failed;
    }
  }
  return {failed == 0, std::to_string(checks - failed) + "/" + std::to_string(checks) +
                           " order relations (short-selling ban, consumption ceiling)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"market price of risk", theta_reproduction},
      {"optimal exposure and distortion table", table3_reproduction},
      {"value ODE accuracy and order", ode_correctness},
      {"Bernoulli integrator vs quadrature", bernoulli_consistency},
      {"driver reduction identities", driver_reductions},
      {"ambiguity-neutral degeneracy", neutral_degeneracy},
      {"utility loss range", loss_range},
      {"ambiguity-weight monotonicity", proposition4},
      {"constraint-case orderings", proposition5},
      {"projection axioms", projection_axioms},
      {"Monte Carlo value consistency", monte_carlo},
      {"figure-level order relations", figure_patterns},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.passed) ++failures;
    std::printf("[%s] AC-%02d %s: %s\n", out.passed ? "PASS" : "FAIL", index, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
