#include <benchmark/benchmark.h>

#include <random>

#include "filament/analysis.hpp"
#include "filament/engine.hpp"
#include "filament/population.hpp"
#include "filament/rules.hpp"
#include "filament/search.hpp"

namespace {

using namespace filament;

Filament random_filament(std::size_t n, int s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CellState> cells(n);
  for (auto& c : cells) c = static_cast<CellState>(rng() % static_cast<std::uint64_t>(s));
  return Filament(cells);
}

void BM_Step(benchmark::State& state) {
  const auto rule = automaton_i();
  auto f = random_filament(static_cast<std::size_t>(state.range(0)), 3, 1);
  for (auto _ : state) {
    f = step(rule, f);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(16)->Arg(64)->Arg(1024);

void BM_StepRadius2(benchmark::State& state) {
  const auto rule = bouncer_rule();
  auto f = random_filament(static_cast<std::size_t>(state.range(0)), 2, 1);
  for (auto _ : state) {
    f = step(rule, f);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepRadius2)->Arg(64)->Arg(1024);

void BM_DetectCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<CellState> cells(n, 2);
  cells[0] = 0;
  const Filament initial(cells);
  for (auto _ : state) benchmark::DoNotOptimize(detect_cycle(automaton_i(), initial, default_horizon(n)));
}
BENCHMARK(BM_DetectCycle)->Arg(8)->Arg(32)->Arg(64);

void BM_Census(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(automaton_ii(), n));
}
BENCHMARK(BM_Census)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SearchSlice(benchmark::State& state) {
  SearchOptions o;
  o.first_index = 0;
  o.end_index = 4096;
  for (auto _ : state) benchmark::DoNotOptimize(search_type_a(o));
}
BENCHMARK(BM_SearchSlice)->Unit(benchmark::kMillisecond);

void BM_PopulationTicks(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    PopulationConfig c{.rule = automaton_i(), .m = m, .n0 = 20, .total_ticks = 500, .growth_interval = 120};
    benchmark::DoNotOptimize(run_population(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}
BENCHMARK(BM_PopulationTicks)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
