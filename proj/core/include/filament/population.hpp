#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "filament/core.hpp"

namespace filament {

enum class LiveMetric {
  ActivityBased,        // the filament changed during this tick's step
  ClassificationBased,  // the rule's closed-form predictor says Live
};

enum class GrowthCells {
  Uniform,  // uniformly random state from the filament's own stream
  // (filament index + growth count) mod s; with a population holding every
  // length-n filament s times this reproduces the exact accretion ensemble.
  Cycling,
};

struct PopulationConfig {
  Rule rule;
  std::size_t m = 1;
  std::size_t n0 = 1;
  std::size_t total_ticks = 0;
  std::size_t growth_interval = 1;
  std::uint64_t seed = 0;
  LiveMetric live_metric = LiveMetric::ActivityBased;
  GrowthCells growth_cells = GrowthCells::Uniform;
  // When set, each growth schedules the next one interval_per_cell *
  // current length ticks later instead of growth_interval.
  std::optional<std::size_t> interval_per_cell;
  // Explicit starting filaments (exactly m of them); random when empty.
  std::vector<Filament> initial;
  bool record_liveness = false;
  unsigned workers = 1;
};

// The length-proportional default spacing between growths: 6*n0 for
// automaton-i, 2*n0 for automaton-ii and other rules.
std::size_t default_growth_interval(const Rule& rule, std::size_t n0);

struct PopulationStats {
  std::size_t tick = 0;
  std::size_t live_count = 0;
  double live_fraction = 0.0;
  std::size_t current_length = 0;
  bool grew_this_tick = false;

  bool operator==(const PopulationStats&) const = default;
};

struct PopulationRun {
  std::size_t m = 0;
  std::vector<PopulationStats> series;             // one row per tick, from tick 1
  std::vector<std::vector<std::uint8_t>> liveness;  // [tick-1][filament] when recorded
};

/// Each tick: growth (on a growth tick), one synchronous step for every
/// filament, then the live census. Results depend only on the config.
PopulationRun run_population(const PopulationConfig& config);

struct WindowTurnover {
  std::size_t first_tick = 0;
  std::size_t last_tick = 0;
  std::size_t live_at_end = 0;
  // |live(w-1) xor live(w)| on the snapshots at each window's last tick;
  // 0 for the first window.
  std::size_t symmetric_difference = 0;
  bool contains_growth = false;
};

struct TurnoverReport {
  std::size_t window = 0;
  std::vector<WindowTurnover> windows;
  double ever_live_fraction = 0.0;  // filaments live at some recorded tick
};

TurnoverReport turnover_report(const PopulationRun& run, std::size_t window);

// Mean and population variance of live_fraction over ticks >= from_tick.
double mean_live_fraction(const PopulationRun& run, std::size_t from_tick);
double live_fraction_variance(const PopulationRun& run, std::size_t from_tick);

// For each growth tick g with three full ticks either side: mean live
// fraction over [g, g+3) minus the mean over [g-3, g).
std::vector<double> growth_spike_deltas(const PopulationRun& run);

void write_population_csv(std::ostream& out, const PopulationRun& run);
void write_liveness_csv(std::ostream& out, const PopulationRun& run);

}  // namespace filament
