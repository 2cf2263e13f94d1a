#include <benchmark/benchmark.h>

#include "ric/simulate.hpp"

namespace {

ric::Problem table1(double gamma, ric::ExposureSet set, ric::ConsumptionBand band = {}) {
  ric::MarketModel m;
  m.horizon = 3.0;
  m.rate = 0.05;
  m.discount = 0.015;
  m.drift = (ric::Vector(2) << 0.09, 0.11).finished();
  m.volatility = (ric::Matrix(2, 3) << 0.050, 0.066, 0.082, 0.058, 0.074, 0.090).finished();
  m.risk_aversion = gamma;
  return {m, {(ric::Vector(3) << 1.0, 3.0, 5.0).finished()}, std::move(set), band};
}

void BM_SolveCurves(benchmark::State& state) {
  const auto p = table1(4.0, ric::NonnegativeOrthant{}, {0.0, 1.0});
  const ric::TimeGrid grid(3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ric::solve_curves(p, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveCurves)->RangeMultiplier(4)->Range(150, 9600)->Complexity(benchmark::oN);

void BM_ClosedFormYtilde(benchmark::State& state) {
  const auto p = table1(0.9, ric::FullSpace{});
  const ric::TimeGrid grid(3.0, static_cast<std::size_t>(state.range(0)));
  const auto y0 = ric::integrate_y(p.ambiguity_neutral(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(ric::closed_form_ytilde(p, y0, grid));
}
BENCHMARK(BM_ClosedFormYtilde)->Arg(600)->Arg(3000);

void BM_CaseSuite(benchmark::State& state) {
  const auto p = table1(4.0, ric::FullSpace{});
  const ric::TimeGrid grid(3.0, 600);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ric::run_case_suite(p.market, p.ambiguity, ric::standard_cases(), grid));
  }
}
BENCHMARK(BM_CaseSuite)->Unit(benchmark::kMillisecond);

void BM_SimulateWealth(benchmark::State& state) {
  const auto p = table1(0.9, ric::NonnegativeOrthant{});
  ric::SimConfig sim;
  sim.paths = static_cast<std::size_t>(state.range(0));
  sim.grid = ric::TimeGrid(3.0, 600);
  sim.threads = 1;
  const auto optimal = ric::optimal_controls(p, sim.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ric::simulate_wealth(p, optimal.controls, optimal.y, sim));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateWealth)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
