#pragma once

#include <limits>
#include <variant>

#include "ric/market.hpp"

namespace ric {

/// Marker for an absent bound (box side or consumption ceiling).
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct FullSpace {};
struct NonnegativeOrthant {};

/// Axis-aligned box; sides may be +/-kUnbounded.
struct Box {
  Vector lower;
  Vector upper;
};

/// Closed convex set of admissible risk exposures.
class ExposureSet {
 public:
  using Shape = std::variant<FullSpace, NonnegativeOrthant, Box>;

  ExposureSet() = default;
  ExposureSet(FullSpace s) : shape_(s) {}           // NOLINT(google-explicit-constructor)
  ExposureSet(NonnegativeOrthant s) : shape_(s) {}  // NOLINT(google-explicit-constructor)
  /// Throws DomainError when a lower bound exceeds its upper bound.
  ExposureSet(Box box);  // NOLINT(google-explicit-constructor)

  [[nodiscard]] const Shape& shape() const { return shape_; }
  [[nodiscard]] bool is_full_space() const { return std::holds_alternative<FullSpace>(shape_); }
  [[nodiscard]] bool is_orthant() const { return std::holds_alternative<NonnegativeOrthant>(shape_); }
  [[nodiscard]] bool is_box() const { return std::holds_alternative<Box>(shape_); }

  /// Cones (full space, orthant) are invariant under positive scalings.
  [[nodiscard]] bool is_cone() const { return !is_box(); }

 private:
  Shape shape_ = FullSpace{};
};

/// Nearest point of the set to v in the Euclidean norm.
[[nodiscard]] Vector project(const ExposureSet& set, const Vector& v);

/// |v - project(set, v)|^2.
[[nodiscard]] double distance_sq(const ExposureSet& set, const Vector& v);

/// The image diag(sqrt(d)) * set. Throws DomainError unless every d_i > 0.
[[nodiscard]] ExposureSet scale_set(const ExposureSet& set, const Vector& d);

/// Consumption rate band [lower, upper] with 0 <= lower < upper <= kUnbounded.
struct ConsumptionBand {
  double lower = 0.0;
  double upper = kUnbounded;

  /// Throws DomainError on an invalid band.
  void check() const;

  [[nodiscard]] bool is_unconstrained() const { return lower == 0.0 && upper == kUnbounded; }

  /// 1 / upper, or 0 when the ceiling is absent.
  [[nodiscard]] double y_floor() const { return upper == kUnbounded ? 0.0 : 1.0 / upper; }
  /// 1 / lower, or +infinity when the floor is zero.
  [[nodiscard]] double y_ceiling() const { return lower == 0.0 ? kUnbounded : 1.0 / lower; }

  /// The consumption-equivalent value level: median(1/upper, y, 1/lower).
  [[nodiscard]] double clamp_level(double y) const;
};

/// median(band.lower, raw, band.upper).
[[nodiscard]] double clamp_consumption(const ConsumptionBand& band, double raw);

}  // namespace ric
