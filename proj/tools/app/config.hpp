#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ric/errors.hpp"
#include "ric/strategy.hpp"

namespace ric::app {

/// Malformed or inconsistent scenario file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SimulationCase {
  std::string name;
  ExposureSet exposure;
  ConsumptionBand band;
  bool ambiguity_neutral = false;
};

struct SimulationSettings {
  std::size_t paths = 50'000;
  std::uint64_t seed = 12345;
  bool antithetic = true;
  unsigned threads = 0;
  std::vector<SimulationCase> cases;
};

struct ScenarioConfig {
  MarketModel market;
  AmbiguityProfile ambiguity;
  ExposureSet exposure;
  ConsumptionBand band;
  std::size_t grid = 600;
  SimulationSettings simulation;
  std::vector<CaseSpec> cases;
  std::filesystem::path output = "results";

  [[nodiscard]] Problem problem() const { return {market, ambiguity, exposure, band}; }
};

/// Parses YAML text. Throws ConfigError on syntax or schema errors and on
/// inputs that fail model validation.
[[nodiscard]] ScenarioConfig parse_config(const std::string& text);

[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace ric::app
