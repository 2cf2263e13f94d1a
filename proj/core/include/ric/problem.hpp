#pragma once

#include "ric/constraints.hpp"
#include "ric/market.hpp"

namespace ric {

/// A complete robust investment-consumption problem with deterministic coefficients.
struct Problem {
  MarketModel market;
  AmbiguityProfile ambiguity;
  ExposureSet exposure;  ///< Gamma, in unscaled exposure coordinates
  ConsumptionBand band;

  [[nodiscard]] double gamma() const { return market.risk_aversion; }

  /// The auxiliary set (I + H/gamma)^{1/2} Gamma used inside projections.
  [[nodiscard]] ExposureSet scaled_exposure() const {
    return scale_set(exposure, ambiguity.scale(gamma()));
  }

  /// Same market and constraints with H = 0.
  [[nodiscard]] Problem ambiguity_neutral() const {
    Problem p = *this;
    p.ambiguity = AmbiguityProfile::neutral(market.num_factors());
    return p;
  }
};

/// Throws DomainError listing every violated invariant.
void require_valid(const Problem& problem);

}  // namespace ric
