#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ric/problem.hpp"

namespace ric {

/// Uniform grid t_k = k * T / N, k = 0..N, with t_N == T exactly.
class TimeGrid {
 public:
  /// Throws DomainError unless horizon > 0 and steps >= 2.
  TimeGrid(double horizon, std::size_t steps);

  [[nodiscard]] double horizon() const { return horizon_; }
  [[nodiscard]] std::size_t steps() const { return steps_; }
  [[nodiscard]] std::size_t size() const { return steps_ + 1; }
  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double node(std::size_t k) const {
    return k == steps_ ? horizon_ : static_cast<double>(k) * dt_;
  }

 private:
  double horizon_;
  std::size_t steps_;
  double dt_;
};

/// Value-curve solutions sampled on a grid.
///
/// `y` is the robust value curve, `y0` the ambiguity-neutral one and
/// `ytilde` the curve of an ambiguity-averse investor who follows the
/// ambiguity-neutral strategy. All three end at beta^{1/gamma}.
struct SolutionCurves {
  TimeGrid grid;
  std::vector<double> y;
  std::vector<double> y0;
  std::vector<double> ytilde;
};

// -- Scalar coefficients ------------------------------------------------------

/// Growth coefficient Q(t) of the robust value ODE. Evaluated with H = 0
/// (`problem.ambiguity_neutral()`) this is the ambiguity-neutral Q0(t).
[[nodiscard]] double q_coefficient(const Problem& problem, double t);

/// Linear coefficient of the Bernoulli equation for the sub-optimal curve,
/// given the ambiguity-neutral curve value at t.
[[nodiscard]] double qtilde_coefficient(const Problem& problem, double y0_at_t, double t);

// -- Backward integration -----------------------------------------------------

/// Right-hand side F(t, v) of -dv/dt = F(t, v).
using BackwardRhs = std::function<double(double t, double value)>;

/// Classical fourth-order Runge-Kutta from v(T) = terminal down to t = 0.
/// Throws PositivityLossError if a node value is nonpositive or not finite.
[[nodiscard]] std::vector<double> integrate_backward(const BackwardRhs& rhs, double terminal,
                                                     const TimeGrid& grid);

/// Fourth-order interpolation of a node-sampled curve at an arbitrary t in [0, T].
[[nodiscard]] double interpolate_nodes(std::span<const double> curve, const TimeGrid& grid,
                                       double t);

/// Tail integrals I_k = int_{t_k}^{T} f, from node samples (composite Simpson
/// with a 3/8 or four-point end panel on odd counts).
[[nodiscard]] std::vector<double> tail_integrals(std::span<const double> f, const TimeGrid& grid);

/// Robust value curve: -Y' = Y / clamp(Y, 1/cbar, 1/cfloor) + Q(t) Y, Y(T) = beta^{1/gamma}.
/// Pass `problem.ambiguity_neutral()` for Y0.
[[nodiscard]] std::vector<double> integrate_y(const Problem& problem, const TimeGrid& grid);

/// Sub-optimal value curve from the Bernoulli equation, integrated through u = Ytilde^gamma.
[[nodiscard]] std::vector<double> integrate_ytilde(const Problem& problem,
                                                   std::span<const double> y0_curve,
                                                   const TimeGrid& grid);

/// Quadrature form of Y; only defined for an unconstrained consumption band.
[[nodiscard]] std::vector<double> closed_form_y(const Problem& problem, const TimeGrid& grid);

/// Quadrature form of the Bernoulli solution for the sub-optimal curve.
[[nodiscard]] std::vector<double> closed_form_ytilde(const Problem& problem,
                                                     std::span<const double> y0_curve,
                                                     const TimeGrid& grid);

/// {beta exp(int_t^T q) + int_t^T level^{gamma-1} exp(int_t^s q) ds}^{1/gamma}
/// from node samples of q and level.
[[nodiscard]] std::vector<double> closed_form_bernoulli(std::span<const double> qtilde,
                                                        std::span<const double> level,
                                                        double beta, double gamma,
                                                        const TimeGrid& grid);

/// Y, Y0 and Ytilde on one grid.
[[nodiscard]] SolutionCurves solve_curves(const Problem& problem, const TimeGrid& grid);

// -- BSDE drivers (point evaluators; z is the martingale integrand) -----------

[[nodiscard]] double driver_f(const Problem& problem, double t, double y, const Vector& z);

/// Ambiguity-neutral driver; the ambiguity weights of `problem` are ignored.
[[nodiscard]] double driver_f0(const Problem& problem, double t, double y, const Vector& z);

[[nodiscard]] double driver_ftilde(const Problem& problem, double t, double ytilde,
                                   const Vector& ztilde, double y0, const Vector& z0);

}  // namespace ric
