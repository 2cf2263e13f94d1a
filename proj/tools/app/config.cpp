#include "config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ric::app {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail("'" + key + "' has the wrong type");
  }
}

template <class T>
T required(const YAML::Node& parent, const std::string& key) {
  const auto node = parent[key];
  if (!node) fail("missing '" + key + "'");
  return scalar<T>(node, key);
}

template <class T>
T optional(const YAML::Node& parent, const std::string& key, T fallback) {
  const auto node = parent[key];
  return node ? scalar<T>(node, key) : fallback;
}

Vector vector_of(const YAML::Node& node, const std::string& key) {
  if (!node || !node.IsSequence()) fail("'" + key + "' must be a list of numbers");
  Vector v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = scalar<double>(node[i], key);
  }
  return v;
}

Matrix matrix_of(const YAML::Node& node, const std::string& key) {
  if (!node || !node.IsSequence() || node.size() == 0) fail("'" + key + "' must be a list of rows");
  const std::size_t cols = node[0].size();
  Matrix m(static_cast<Eigen::Index>(node.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Vector row = vector_of(node[i], key);
    if (static_cast<std::size_t>(row.size()) != cols) fail("'" + key + "' rows differ in length");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

RateCurve curve_of(const YAML::Node& node, const std::string& key) {
  if (!node) fail("missing '" + key + "'");
  if (node.IsScalar()) return {scalar<double>(node, key)};
  if (!node.IsMap()) fail("'" + key + "' must be a number or {breakpoints, values}");
  std::vector<double> breaks;
  std::vector<double> values;
  for (const auto& b : node["breakpoints"]) breaks.push_back(scalar<double>(b, key));
  for (const auto& v : node["values"]) values.push_back(scalar<double>(v, key));
  try {
    return {std::move(breaks), std::move(values)};
  } catch (const Error& e) {
    fail("'" + key + "': " + e.what());
  }
}

ExposureSet exposure_of(const YAML::Node& parent) {
  const auto tag = optional<std::string>(parent, "exposure", "full");
  if (tag == "full") return FullSpace{};
  if (tag == "orthant") return NonnegativeOrthant{};
  if (tag == "box") {
    const auto box = parent["box"];
    if (!box) fail("exposure 'box' needs a 'box: {lower, upper}' block");
    try {
      return Box{vector_of(box["lower"], "box.lower"), vector_of(box["upper"], "box.upper")};
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }
  fail("unknown exposure set '" + tag + "' (expected full, orthant or box)");
}

ConsumptionBand band_of(const YAML::Node& parent) {
  ConsumptionBand band;
  const auto node = parent["consumption"];
  if (!node) return band;
  band.lower = optional<double>(node, "lower", 0.0);
  band.upper = optional<double>(node, "upper", kUnbounded);
  try {
    band.check();
  } catch (const DomainError& e) {
    fail(e.what());
  }
  return band;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!root.IsMap()) fail("top level must be a mapping");

  ScenarioConfig cfg;
  const auto market = root["market"];
  if (!market) fail("missing 'market' block");
  cfg.market.horizon = required<double>(market, "horizon");
  cfg.market.rate = curve_of(market["rate"], "rate");
  cfg.market.discount = curve_of(market["discount"], "discount");
  cfg.market.drift = vector_of(market["drift"], "drift");
  cfg.market.volatility = matrix_of(market["volatility"], "volatility");
  cfg.market.risk_aversion = required<double>(market, "risk_aversion");
  cfg.market.bequest_weight = optional<double>(market, "bequest_weight", 1.0);
  cfg.market.initial_wealth = optional<double>(market, "initial_wealth", 1.0);

  const auto ambiguity = root["ambiguity"];
  cfg.ambiguity.eta = ambiguity ? vector_of(ambiguity["eta"], "eta")
                                : Vector::Zero(cfg.market.volatility.cols()).eval();

  if (const auto constraints = root["constraints"]) {
    cfg.exposure = exposure_of(constraints);
    cfg.band = band_of(constraints);
  }

  if (const auto solver = root["solver"]) {
    const auto grid = optional<long long>(solver, "grid", 600);
    if (grid < 2) fail("solver.grid must be at least 2");
    cfg.grid = static_cast<std::size_t>(grid);
  }

  if (const auto sim = root["simulate"]) {
    const auto paths = optional<long long>(sim, "paths", 50'000);
    if (paths < 1) fail("simulate.paths must be positive");
    cfg.simulation.paths = static_cast<std::size_t>(paths);
    cfg.simulation.seed = optional<std::uint64_t>(sim, "seed", 12345);
    cfg.simulation.antithetic = optional<bool>(sim, "antithetic", true);
    cfg.simulation.threads = optional<unsigned>(sim, "threads", 0);
    for (const auto& c : sim["cases"]) {
      cfg.simulation.cases.push_back({required<std::string>(c, "name"), exposure_of(c), band_of(c),
                                      optional<bool>(c, "ambiguity_neutral", false)});
    }
  }

  for (const auto& c : root["cases"]) {
    cfg.cases.push_back({required<std::string>(c, "name"), exposure_of(c), band_of(c)});
  }

  cfg.output = optional<std::string>(root, "output", "results");

  try {
    require_valid(cfg.problem());
  } catch (const Error& e) {
    fail(e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace ric::app
