#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "filament/core.hpp"

namespace filament {

// Largest per-step change count that still counts as a localized wave.
inline constexpr std::size_t kDefaultTypeAThreshold = 2;

// Steps allowed before a trajectory is reported unresolved.
constexpr std::size_t default_horizon(std::size_t n) { return 50 * n + 100; }

/// One synchronous update: every cell reads the pre-step filament.
Filament step(const Rule& rule, const Filament& filament);

// Same update over raw cells, writing into `out` (same length, not aliasing
// `in`). States are not range-checked.
void step_cells(const Rule& rule, std::span<const CellState> in, std::span<CellState> out);

struct Trace {
  std::string rule_name;
  std::vector<Filament> states;  // states[0] is the initial filament
};

Trace run_trace(const Rule& rule, const Filament& initial, std::size_t t_max);

struct WaveType {
  enum class Kind { TypeA, TypeB, Mixed };
  Kind kind = Kind::Mixed;
  // Largest number of cells changed between consecutive cycle states.
  std::size_t k_max = 0;

  bool operator==(const WaveType&) const = default;
};

const char* to_string(WaveType::Kind kind);

// TypeB when every cell changes at every step of the cycle (including the
// wrap back to the first state); TypeA when at most `type_a_threshold` cells
// change per step and the threshold is below the filament length.
WaveType wave_type_of(std::span<const Filament> cycle_states,
                      std::size_t type_a_threshold = kDefaultTypeAThreshold);

struct Quiescent {
  std::size_t settle_time = 0;
  bool operator==(const Quiescent&) const = default;
};

struct Cyclic {
  std::size_t transient = 0;
  std::size_t period = 0;
  WaveType wave;
  bool operator==(const Cyclic&) const = default;
};

struct Unresolved {
  std::size_t horizon = 0;
  bool operator==(const Unresolved&) const = default;
};

struct TrajectoryReport {
  std::variant<Quiescent, Cyclic, Unresolved> outcome;

  bool quiescent() const { return std::holds_alternative<Quiescent>(outcome); }
  bool cyclic() const { return std::holds_alternative<Cyclic>(outcome); }
  bool unresolved() const { return std::holds_alternative<Unresolved>(outcome); }
  const Cyclic* cycle() const { return std::get_if<Cyclic>(&outcome); }

  // Time to reach the fixed point or the cycle; 0 when unresolved.
  std::size_t settle_time() const;
  // Cells changed per step inside the cycle; 0 unless cyclic.
  std::size_t max_cells_changed_per_step_in_cycle() const;

  bool operator==(const TrajectoryReport&) const = default;
};

/// Iterates from `initial` for at most `horizon` steps, remembering when each
/// filament was first seen. The first repeat fixes the transient and period.
TrajectoryReport detect_cycle(const Rule& rule, const Filament& initial, std::size_t horizon,
                              std::size_t type_a_threshold = kDefaultTypeAThreshold);

// Adjacent pairs with differing states.
std::size_t count_steps(const Filament& filament);

std::size_t hamming_distance(const Filament& a, const Filament& b);

}  // namespace filament
