#include "ric/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "ric/errors.hpp"

namespace ric {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dimension(const Box& box, const Vector& v) {
  if (box.lower.size() != v.size()) {
    throw DomainError("box dimension differs from vector dimension");
  }
}

}  // namespace

ExposureSet::ExposureSet(Box box) {
  if (box.lower.size() != box.upper.size()) {
    throw DomainError("box bounds have different lengths");
  }
  for (Eigen::Index i = 0; i < box.lower.size(); ++i) {
    if (std::isnan(box.lower[i]) || std::isnan(box.upper[i]) || box.lower[i] > box.upper[i]) {
      throw DomainError("box lower bound exceeds upper bound");
    }
  }
  shape_ = std::move(box);
}

Vector project(const ExposureSet& set, const Vector& v) {
  return std::visit(overloaded{
                        [&](const FullSpace&) -> Vector { return v; },
                        [&](const NonnegativeOrthant&) -> Vector { return v.cwiseMax(0.0); },
                        [&](const Box& box) -> Vector {
                          check_dimension(box, v);
                          return v.cwiseMax(box.lower).cwiseMin(box.upper);
                        },
                    },
                    set.shape());
}

double distance_sq(const ExposureSet& set, const Vector& v) {
  return (v - project(set, v)).squaredNorm();
}

ExposureSet scale_set(const ExposureSet& set, const Vector& d) {
  if (!(d.array() > 0.0).all()) {
    throw DomainError("set scaling requires strictly positive factors");
  }
  return std::visit(overloaded{
                        [](const FullSpace& s) -> ExposureSet { return s; },
                        [](const NonnegativeOrthant& s) -> ExposureSet { return s; },
                        [&](const Box& box) -> ExposureSet {
                          check_dimension(box, d);
                          const Vector root = d.cwiseSqrt();
                          // sqrt(d) * (+/-inf) stays infinite since sqrt(d) > 0.
                          return Box{root.cwiseProduct(box.lower), root.cwiseProduct(box.upper)};
                        },
                    },
                    set.shape());
}

void ConsumptionBand::check() const {
  if (!(lower >= 0.0) || !(upper > lower)) {
    throw DomainError("consumption band must satisfy 0 <= floor < ceiling");
  }
}

double ConsumptionBand::clamp_level(double y) const {
  return std::min(std::max(y, y_floor()), y_ceiling());
}

double clamp_consumption(const ConsumptionBand& band, double raw) {
  return std::min(std::max(raw, band.lower), band.upper);
}

}  // namespace ric
