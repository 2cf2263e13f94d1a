#include "ric/detsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ric/errors.hpp"

namespace ric {

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps), dt_(horizon / static_cast<double>(steps)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("grid horizon must be positive");
  if (steps < 2) throw DomainError("grid needs at least two steps");
}

namespace {

/// Time-independent pieces of the coefficient formulas, computed once per problem.
class Coefficients {
 public:
  explicit Coefficients(const Problem& problem)
      : market_(problem.market),
        band_(problem.band),
        gamma_(problem.gamma()),
        eta_(problem.ambiguity.eta),
        scale_(problem.ambiguity.scale(gamma_)),
        inv_sqrt_scale_(scale_.cwiseSqrt().cwiseInverse()),
        scaled_set_(problem.scaled_exposure()),
        exposure_(problem.exposure) {
    const Matrix cov = covariance(market_);
    const Eigen::LLT<Matrix> llt(cov);
    const auto m = static_cast<Eigen::Index>(market_.num_assets());
    theta_map_ = market_.volatility.transpose() * llt.solve(Matrix::Identity(m, m));
  }

  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] const ConsumptionBand& band() const { return band_; }

  [[nodiscard]] Vector theta(double t) const {
    return theta_map_ * (market_.drift.array() - market_.rate(t)).matrix();
  }

  /// -rho + (1 - gamma) r
  [[nodiscard]] double carry(double t) const {
    return -market_.discount(t) + (1.0 - gamma_) * market_.rate(t);
  }

  [[nodiscard]] double q(double t) const {
    const Vector th = theta(t);
    const double quad = th.cwiseAbs2().cwiseQuotient(scale_).sum();
    const Vector target = inv_sqrt_scale_.cwiseProduct(th) / gamma_;
    return (carry(t) + (1.0 - gamma_) / (2.0 * gamma_) * quad) / gamma_ -
           0.5 * (1.0 - gamma_) * distance_sq(scaled_set_, target);
  }

  [[nodiscard]] double qtilde(double y0, double t) const {
    const Vector th = theta(t);
    const Vector p0 = project(exposure_, th / gamma_);
    const double level = band_.clamp_level(y0);
    const double weighted = p0.cwiseAbs2().cwiseProduct(scale_).sum();
    return (1.0 - gamma_) * (-1.0 / level - 0.5 * gamma_ * weighted +
                             carry(t) / (1.0 - gamma_) + p0.dot(th));
  }

  [[nodiscard]] double f(double t, double y, const Vector& z) const {
    const Vector th = theta(t);
    const double g = gamma_;
    const double consumption = y / band_.clamp_level(y);
    const double growth =
        (carry(t) + (1.0 - g) / (2.0 * g) * th.cwiseAbs2().cwiseQuotient(scale_).sum()) / g * y;
    const double hedge = th.dot(scale_.cwiseInverse().cwiseProduct(z) - g * z) / g;
    const double quadratic =
        -z.cwiseAbs2().cwiseProduct(eta_).cwiseQuotient(scale_).sum() / (2.0 * g * (1.0 - g)) / y;
    const Vector target = inv_sqrt_scale_.cwiseProduct(
        th / g + (1.0 - eta_.array() / (1.0 - g)).matrix().cwiseProduct(z) / y);
    const double constraint = -0.5 * (1.0 - g) * distance_sq(scaled_set_, target) * y;
    return consumption + growth + hedge + quadratic + constraint;
  }

  [[nodiscard]] double ftilde(double t, double ytilde, const Vector& ztilde, double y0,
                              const Vector& z0) const {
    const Vector th = theta(t);
    const double g = gamma_;
    const double ratio = ytilde / band_.clamp_level(y0);
    const double consumption = (1.0 - g) / g * (-ratio + std::pow(ratio, 1.0 - g) / (1.0 - g));
    const Vector p0 = project(exposure_, th / g + z0 / y0);
    const double variance = -0.5 * (1.0 - g) * p0.cwiseAbs2().cwiseProduct(scale_).sum() * ytilde;
    const double carry_term = carry(t) / g * ytilde;
    const Vector drift =
        th / g + (1.0 - eta_.array() / (1.0 - g)).matrix().cwiseProduct(ztilde) / ytilde;
    const double exposure_term = (1.0 - g) * p0.dot(drift) * ytilde;
    const double quadratic =
        -0.5 * (1.0 - g) *
        (ztilde.cwiseAbs2().sum() +
         g / ((1.0 - g) * (1.0 - g)) * ztilde.cwiseAbs2().cwiseProduct(eta_).sum()) /
        ytilde;
    return consumption + variance + carry_term + exposure_term + quadratic;
  }

 private:
  const MarketModel& market_;
  ConsumptionBand band_;
  double gamma_;
  Vector eta_;
  Vector scale_;
  Vector inv_sqrt_scale_;
  ExposureSet scaled_set_;
  ExposureSet exposure_;
  Matrix theta_map_;
};

void check_curve(std::span<const double> curve, const TimeGrid& grid, const char* name) {
  if (curve.size() != grid.size()) {
    std::ostringstream msg;
    msg << name << " has " << curve.size() << " samples, grid has " << grid.size() << " nodes";
    throw DomainError(msg.str());
  }
  for (double v : curve) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(name) + " must be positive and finite");
    }
  }
}

double terminal_value(const Problem& problem) {
  return std::pow(problem.market.bequest_weight, 1.0 / problem.gamma());
}

}  // namespace

double q_coefficient(const Problem& problem, double t) { return Coefficients(problem).q(t); }

double qtilde_coefficient(const Problem& problem, double y0_at_t, double t) {
  if (!(y0_at_t > 0.0)) throw DomainError("qtilde_coefficient requires y0 > 0");
  return Coefficients(problem).qtilde(y0_at_t, t);
}

std::vector<double> integrate_backward(const BackwardRhs& rhs, double terminal,
                                       const TimeGrid& grid) {
  const std::size_t n = grid.steps();
  const double h = grid.dt();
  std::vector<double> v(grid.size());
  v[n] = terminal;
  for (std::size_t k = n; k > 0; --k) {
    const double t1 = grid.node(k);
    const double t0 = grid.node(k - 1);
    const double tm = 0.5 * (t0 + t1);
    const double x = v[k];
    // Stepping backward in time: d v / d(-t) = rhs. The upper end is taken as a
    // left limit so right-continuous coefficients use their value inside the step.
    const double k1 = rhs(std::nextafter(t1, t0), x);
    const double k2 = rhs(tm, x + 0.5 * h * k1);
    const double k3 = rhs(tm, x + 0.5 * h * k2);
    const double k4 = rhs(t0, x + h * k3);
    const double next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(next > 0.0) || !std::isfinite(next)) {
      std::ostringstream msg;
      msg << "backward integration lost positivity at t = " << t0 << " (value " << next
          << "); refine the grid or check the inputs";
      throw PositivityLossError(msg.str());
    }
    v[k - 1] = next;
  }
  return v;
}

double interpolate_nodes(std::span<const double> curve, const TimeGrid& grid, double t) {
  const std::size_t n = grid.steps();
  const double s = std::clamp(t / grid.dt(), 0.0, static_cast<double>(n));
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-9) return curve[static_cast<std::size_t>(nearest)];

  const auto cell = std::min(static_cast<std::size_t>(s), n - 1);
  // Four-point Lagrange stencil, centred on the cell where possible.
  const std::size_t count = std::min<std::size_t>(4, n + 1);
  const std::size_t first = std::min(cell == 0 ? 0 : cell - 1, n + 1 - count);
  double value = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double weight = 1.0;
    const double xi = static_cast<double>(first + i);
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      const double xj = static_cast<double>(first + j);
      weight *= (s - xj) / (xi - xj);
    }
    value += weight * curve[first + i];
  }
  return value;
}

std::vector<double> tail_integrals(std::span<const double> f, const TimeGrid& grid) {
  const std::size_t n = grid.steps();
  if (f.size() != grid.size()) throw DomainError("integrand size differs from grid size");
  const double h = grid.dt();
  std::vector<double> out(n + 1, 0.0);

  // Nodes an even number of intervals before T: plain composite Simpson.
  for (std::size_t k = n; k >= 2; k -= 2) {
    out[k - 2] = out[k] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    if (k < 4) break;
  }
  // Odd counts: a 3/8 panel at the left end, Simpson for the rest.
  for (std::size_t k = n - 1;; k -= 2) {
    const std::size_t remaining = n - k;
    if (remaining == 1) {
      if (n >= 3) {
        out[k] = h / 24.0 * (f[n - 3] - 5.0 * f[n - 2] + 19.0 * f[n - 1] + 9.0 * f[n]);
      } else {
        out[k] = h / 12.0 * (-f[n - 2] + 8.0 * f[n - 1] + 5.0 * f[n]);
      }
    } else {
      out[k] = 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]) + out[k + 3];
    }
    if (k < 2) break;
  }
  return out;
}

std::vector<double> integrate_y(const Problem& problem, const TimeGrid& grid) {
  require_valid(problem);
  const Coefficients coef(problem);
  const auto& band = problem.band;
  const BackwardRhs rhs = [&](double t, double y) {
    return y / band.clamp_level(y) + coef.q(t) * y;
  };
  return integrate_backward(rhs, terminal_value(problem), grid);
}

std::vector<double> integrate_ytilde(const Problem& problem, std::span<const double> y0_curve,
                                     const TimeGrid& grid) {
  require_valid(problem);
  check_curve(y0_curve, grid, "y0 curve");
  const Coefficients coef(problem);
  const double g = problem.gamma();
  const auto& band = problem.band;
  const BackwardRhs rhs = [&](double t, double u) {
    const double y0 = interpolate_nodes(y0_curve, grid, t);
    return std::pow(band.clamp_level(y0), g - 1.0) + coef.qtilde(y0, t) * u;
  };
  auto u = integrate_backward(rhs, problem.market.bequest_weight, grid);
  for (auto& v : u) v = std::pow(v, 1.0 / g);
  return u;
}

std::vector<double> closed_form_y(const Problem& problem, const TimeGrid& grid) {
  require_valid(problem);
  if (!problem.band.is_unconstrained()) {
    throw DomainError("quadrature form of Y requires the consumption band [0, inf]");
  }
  const Coefficients coef(problem);
  std::vector<double> q(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) q[k] = coef.q(grid.node(k));
  const auto growth = tail_integrals(q, grid);
  std::vector<double> discounted(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) discounted[k] = std::exp(-growth[k]);
  const auto flow = tail_integrals(discounted, grid);
  const double terminal = terminal_value(problem);
  std::vector<double> y(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    y[k] = std::exp(growth[k]) * (terminal + flow[k]);
  }
  y.back() = terminal;
  return y;
}

std::vector<double> closed_form_bernoulli(std::span<const double> qtilde,
                                          std::span<const double> level, double beta,
                                          double gamma, const TimeGrid& grid) {
  if (qtilde.size() != grid.size() || level.size() != grid.size()) {
    throw DomainError("coefficient samples differ from grid size");
  }
  const auto growth = tail_integrals(qtilde, grid);
  std::vector<double> flow_density(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    flow_density[k] = std::pow(level[k], gamma - 1.0) * std::exp(-growth[k]);
  }
  const auto flow = tail_integrals(flow_density, grid);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = std::pow(std::exp(growth[k]) * (beta + flow[k]), 1.0 / gamma);
  }
  out.back() = std::pow(beta, 1.0 / gamma);
  return out;
}

std::vector<double> closed_form_ytilde(const Problem& problem, std::span<const double> y0_curve,
                                       const TimeGrid& grid) {
  require_valid(problem);
  check_curve(y0_curve, grid, "y0 curve");
  const Coefficients coef(problem);
  std::vector<double> q(grid.size());
  std::vector<double> level(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    q[k] = coef.qtilde(y0_curve[k], grid.node(k));
    level[k] = problem.band.clamp_level(y0_curve[k]);
  }
  return closed_form_bernoulli(q, level, problem.market.bequest_weight, problem.gamma(), grid);
}

SolutionCurves solve_curves(const Problem& problem, const TimeGrid& grid) {
  SolutionCurves out{grid, integrate_y(problem, grid), {}, {}};
  out.y0 = problem.ambiguity.is_neutral() ? out.y : integrate_y(problem.ambiguity_neutral(), grid);
  out.ytilde = integrate_ytilde(problem, out.y0, grid);
  return out;
}

double driver_f(const Problem& problem, double t, double y, const Vector& z) {
  if (!(y > 0.0)) throw DomainError("driver requires y > 0");
  return Coefficients(problem).f(t, y, z);
}

double driver_f0(const Problem& problem, double t, double y, const Vector& z) {
  if (!(y > 0.0)) throw DomainError("driver requires y > 0");
  return Coefficients(problem.ambiguity_neutral()).f(t, y, z);
}

double driver_ftilde(const Problem& problem, double t, double ytilde, const Vector& ztilde,
                     double y0, const Vector& z0) {
  if (!(ytilde > 0.0) || !(y0 > 0.0)) throw DomainError("driver requires positive levels");
  return Coefficients(problem).ftilde(t, ytilde, ztilde, y0, z0);
}

}  // namespace ric
