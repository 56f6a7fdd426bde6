#include "filament/engine.hpp"

#include <algorithm>
#include <unordered_map>

namespace filament {

void step_cells(const Rule& rule, std::span<const CellState> in, std::span<CellState> out) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const int r = rule.radius();
  const auto empty = static_cast<std::size_t>(rule.num_states());
  const auto base = empty + 1;
  auto symbol = [&](std::ptrdiff_t j) -> std::size_t { return (j < 0 || j >= n) ? empty : in[j]; };
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::size_t code = 0;
    for (int k = -r; k <= r; ++k) {
      if (k == 0) continue;
      code = code * base + symbol(i + k);
    }
    out[i] = rule.next_by_code(in[i], code);
  }
}

Filament step(const Rule& rule, const Filament& filament) {
  for (CellState c : filament.cells()) {
    if (c >= rule.num_states()) {
      throw Error("state " + std::to_string(c) + " out of range for rule '" + rule.name() + "'");
    }
  }
  std::vector<CellState> next(filament.size());
  step_cells(rule, filament.cells(), next);
  return Filament(std::move(next));
}

Trace run_trace(const Rule& rule, const Filament& initial, std::size_t t_max) {
  Trace trace{rule.name(), {initial}};
  trace.states.reserve(t_max + 1);
  for (std::size_t t = 0; t < t_max; ++t) {
    trace.states.push_back(step(rule, trace.states.back()));
  }
  return trace;
}

const char* to_string(WaveType::Kind kind) {
  switch (kind) {
    case WaveType::Kind::TypeA:
      return "A";
    case WaveType::Kind::TypeB:
      return "B";
    case WaveType::Kind::Mixed:
      return "mixed";
  }
  return "?";
}

WaveType wave_type_of(std::span<const Filament> cycle_states, std::size_t type_a_threshold) {
  if (cycle_states.size() < 2) {
    throw Error("a wave needs a cycle of at least two states");
  }
  const auto n = cycle_states.front().size();
  std::size_t k_max = 0;
  bool every_cell_every_step = true;
  for (std::size_t t = 0; t < cycle_states.size(); ++t) {
    const auto& a = cycle_states[t];
    const auto& b = cycle_states[(t + 1) % cycle_states.size()];
    const auto changed = hamming_distance(a, b);
    k_max = std::max(k_max, changed);
    every_cell_every_step = every_cell_every_step && changed == n;
  }
  WaveType wave;
  wave.k_max = k_max;
  if (every_cell_every_step) {
    wave.kind = WaveType::Kind::TypeB;
  } else if (k_max <= type_a_threshold && type_a_threshold < n) {
    wave.kind = WaveType::Kind::TypeA;
  } else {
    wave.kind = WaveType::Kind::Mixed;
  }
  return wave;
}

std::size_t TrajectoryReport::settle_time() const {
  if (const auto* q = std::get_if<Quiescent>(&outcome)) return q->settle_time;
  if (const auto* c = std::get_if<Cyclic>(&outcome)) return c->transient;
  return 0;
}

std::size_t TrajectoryReport::max_cells_changed_per_step_in_cycle() const {
  if (const auto* c = std::get_if<Cyclic>(&outcome)) return c->wave.k_max;
  return 0;
}

TrajectoryReport detect_cycle(const Rule& rule, const Filament& initial, std::size_t horizon,
                              std::size_t type_a_threshold) {
  std::unordered_map<Filament, std::size_t, FilamentHash> first_seen;
  std::vector<Filament> history{initial};
  first_seen.emplace(initial, 0);
  for (std::size_t t = 1; t <= horizon; ++t) {
    auto next = step(rule, history.back());
    const auto [it, inserted] = first_seen.emplace(next, t);
    if (!inserted) {
      const auto transient = it->second;
      const auto period = t - transient;
      if (period == 1) {
        return {Quiescent{transient}};
      }
      const std::span<const Filament> cycle(history.data() + transient, period);
      return {Cyclic{transient, period, wave_type_of(cycle, type_a_threshold)}};
    }
    history.push_back(std::move(next));
  }
  return {Unresolved{horizon}};
}

std::size_t count_steps(const Filament& filament) {
  std::size_t steps = 0;
  for (std::size_t i = 1; i < filament.size(); ++i) {
    steps += filament[i] != filament[i - 1] ? 1 : 0;
  }
  return steps;
}

std::size_t hamming_distance(const Filament& a, const Filament& b) {
  if (a.size() != b.size()) {
    throw Error("hamming distance needs equal-length filaments");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

}  // namespace filament
