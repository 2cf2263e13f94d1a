#pragma once

#include <random>

#include "ric/problem.hpp"

namespace ric::testing {

inline MarketModel table1_market(double gamma = 4.0) {
  MarketModel m;
  m.horizon = 3.0;
  m.rate = 0.05;
  m.discount = 0.015;
  m.drift = (Vector(2) << 0.09, 0.11).finished();
  m.volatility = (Matrix(2, 3) << 0.050, 0.066, 0.082, 0.058, 0.074, 0.090).finished();
  m.risk_aversion = gamma;
  m.bequest_weight = 1.0;
  m.initial_wealth = 1.0;
  return m;
}

inline AmbiguityProfile table1_ambiguity() { return {(Vector(3) << 1.0, 3.0, 5.0).finished()}; }

inline Problem table1_problem(double gamma, ExposureSet set, ConsumptionBand band = {},
                              bool neutral = false) {
  Problem p{table1_market(gamma), table1_ambiguity(), std::move(set), band};
  return neutral ? p.ambiguity_neutral() : p;
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace ric::testing
