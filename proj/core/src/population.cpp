#include "filament/population.hpp"

#include <algorithm>
#include <barrier>
#include <iomanip>
#include <numeric>
#include <random>
#include <thread>

#include "filament/analysis.hpp"
#include "filament/engine.hpp"

namespace filament {

std::size_t default_growth_interval(const Rule& rule, std::size_t n0) {
  return rule.name() == "automaton-i" ? 6 * n0 : 2 * n0;
}

namespace {

struct Member {
  std::vector<CellState> cells;
  std::vector<CellState> scratch;
  std::mt19937_64 rng;
};

void validate(const PopulationConfig& c) {
  if (c.m < 1) throw Error("population needs m >= 1");
  if (c.n0 < 1) throw Error("population needs n0 >= 1");
  if (c.growth_interval < 1) throw Error("growth interval must be >= 1");
  if (c.interval_per_cell && *c.interval_per_cell < 1) throw Error("interval per cell must be >= 1");
  if (!c.initial.empty()) {
    if (c.initial.size() != c.m) throw Error("explicit initial population must hold exactly m filaments");
    for (const auto& f : c.initial) {
      if (f.size() != c.n0) throw Error("explicit initial filaments must all have length n0");
      for (CellState s : f.cells()) {
        if (s >= c.rule.num_states()) throw Error("initial state out of range for rule");
      }
    }
  }
  if (c.live_metric == LiveMetric::ClassificationBased && !predictor_for(c.rule)) {
    throw Error("rule '" + c.rule.name() + "' has no closed-form predictor for classification-based liveness");
  }
}

std::mt19937_64 member_stream(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Raw engine output is fixed by the standard, unlike the distributions, so
// seeded runs match across standard libraries.
CellState random_state(std::mt19937_64& rng, int num_states) {
  return static_cast<CellState>(rng() % static_cast<std::uint64_t>(num_states));
}

// grow[t] for t in [1, total_ticks]; every filament grows on the same ticks.
std::vector<bool> growth_schedule(const PopulationConfig& c) {
  std::vector<bool> grow(c.total_ticks + 1, false);
  std::size_t length = c.n0;
  std::size_t next = c.interval_per_cell ? *c.interval_per_cell * length : c.growth_interval;
  while (next <= c.total_ticks) {
    grow[next] = true;
    ++length;
    next += c.interval_per_cell ? *c.interval_per_cell * length : c.growth_interval;
  }
  return grow;
}

}  // namespace

PopulationRun run_population(const PopulationConfig& config) {
  validate(config);
  const auto& rule = config.rule;
  const int s = rule.num_states();
  const auto grow = growth_schedule(config);
  const auto predictor = predictor_for(rule);

  std::vector<Member> members(config.m);
  for (std::size_t i = 0; i < config.m; ++i) {
    auto& mem = members[i];
    mem.rng = member_stream(config.seed, i);
    if (config.initial.empty()) {
      mem.cells.resize(config.n0);
      for (auto& c : mem.cells) c = random_state(mem.rng, s);
    } else {
      const auto cells = config.initial[i].cells();
      mem.cells.assign(cells.begin(), cells.end());
    }
  }

  PopulationRun run;
  run.m = config.m;
  run.series.reserve(config.total_ticks);
  std::vector<std::uint8_t> live(config.m, 0);
  std::size_t growths = 0;
  std::size_t length = config.n0;

  auto advance = [&](std::size_t i, std::size_t tick) {
    auto& mem = members[i];
    if (grow[tick]) {
      CellState added = 0;
      if (config.growth_cells == GrowthCells::Uniform) {
        added = random_state(mem.rng, s);
      } else {
        added = static_cast<CellState>((i + growths) % static_cast<std::size_t>(s));
      }
      mem.cells.push_back(added);
    }
    mem.scratch.resize(mem.cells.size());
    step_cells(rule, mem.cells, mem.scratch);
    const bool changed = mem.cells != mem.scratch;
    std::swap(mem.cells, mem.scratch);
    if (config.live_metric == LiveMetric::ActivityBased) {
      live[i] = changed ? 1 : 0;
    } else {
      live[i] = predictor->predict(Filament(mem.cells)) == Liveness::Live ? 1 : 0;
    }
  };

  auto record = [&](std::size_t tick) {
    if (grow[tick]) {
      ++growths;
      ++length;
    }
    PopulationStats st;
    st.tick = tick;
    st.live_count = static_cast<std::size_t>(std::count(live.begin(), live.end(), std::uint8_t{1}));
    st.live_fraction = static_cast<double>(st.live_count) / static_cast<double>(config.m);
    st.current_length = length;
    st.grew_this_tick = grow[tick];
    run.series.push_back(st);
    if (config.record_liveness) run.liveness.push_back(live);
  };

  const unsigned workers = std::clamp<unsigned>(config.workers, 1U, static_cast<unsigned>(config.m));
  if (workers == 1) {
    for (std::size_t tick = 1; tick <= config.total_ticks; ++tick) {
      for (std::size_t i = 0; i < config.m; ++i) advance(i, tick);
      record(tick);
    }
    return run;
  }

  // Persistent workers over fixed slices; the barrier's completion step
  // records the tick once every filament has advanced.
  std::size_t tick = 1;
  std::barrier sync(static_cast<std::ptrdiff_t>(workers), [&]() noexcept {
    record(tick);
    ++tick;
  });
  std::vector<std::thread> threads;
  const auto chunk = (config.m + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const auto begin = std::min(config.m, w * chunk);
    const auto end = std::min(config.m, begin + chunk);
    threads.emplace_back([&, begin, end] {
      for (std::size_t t = 1; t <= config.total_ticks; ++t) {
        for (std::size_t i = begin; i < end; ++i) advance(i, t);
        sync.arrive_and_wait();
      }
    });
  }
  for (auto& t : threads) t.join();
  return run;
}

TurnoverReport turnover_report(const PopulationRun& run, std::size_t window) {
  if (window == 0) throw Error("turnover window must be >= 1");
  if (run.liveness.size() != run.series.size()) {
    throw Error("turnover needs a run with per-filament liveness recorded");
  }
  if (window > run.series.size()) {
    throw Error("turnover window of " + std::to_string(window) + " ticks exceeds the series length " +
                std::to_string(run.series.size()));
  }
  TurnoverReport report;
  report.window = window;
  const std::vector<std::uint8_t>* previous = nullptr;
  for (std::size_t start = 0; start + window <= run.series.size(); start += window) {
    const auto last = start + window - 1;
    WindowTurnover w;
    w.first_tick = run.series[start].tick;
    w.last_tick = run.series[last].tick;
    const auto& snapshot = run.liveness[last];
    w.live_at_end = static_cast<std::size_t>(std::count(snapshot.begin(), snapshot.end(), std::uint8_t{1}));
    for (std::size_t t = start; t <= last; ++t) w.contains_growth = w.contains_growth || run.series[t].grew_this_tick;
    if (previous != nullptr) {
      for (std::size_t i = 0; i < snapshot.size(); ++i) w.symmetric_difference += (*previous)[i] != snapshot[i];
    }
    previous = &snapshot;
    report.windows.push_back(w);
  }
  std::size_t ever = 0;
  for (std::size_t i = 0; i < run.m; ++i) {
    const bool any = std::any_of(run.liveness.begin(), run.liveness.end(), [i](const auto& row) { return row[i] != 0; });
    ever += any ? 1 : 0;
  }
  report.ever_live_fraction = run.m == 0 ? 0.0 : static_cast<double>(ever) / static_cast<double>(run.m);
  return report;
}

double mean_live_fraction(const PopulationRun& run, std::size_t from_tick) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& st : run.series) {
    if (st.tick < from_tick) continue;
    sum += st.live_fraction;
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double live_fraction_variance(const PopulationRun& run, std::size_t from_tick) {
  const double mean = mean_live_fraction(run, from_tick);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& st : run.series) {
    if (st.tick < from_tick) continue;
    sum += (st.live_fraction - mean) * (st.live_fraction - mean);
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<double> growth_spike_deltas(const PopulationRun& run) {
  std::vector<double> deltas;
  const auto& s = run.series;
  for (std::size_t g = 3; g + 3 <= s.size(); ++g) {
    if (!s[g].grew_this_tick) continue;
    double before = 0.0;
    double after = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      before += s[g - 3 + k].live_fraction;
      after += s[g + k].live_fraction;
    }
    deltas.push_back((after - before) / 3.0);
  }
  return deltas;
}

void write_population_csv(std::ostream& out, const PopulationRun& run) {
  out << "tick,population_size,filament_length,live_count,live_fraction,grew\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const auto& st : run.series) {
    out << st.tick << ',' << run.m << ',' << st.current_length << ',' << st.live_count << ','
        << st.live_fraction << ',' << (st.grew_this_tick ? 1 : 0) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_liveness_csv(std::ostream& out, const PopulationRun& run) {
  out << "tick,filament_id,live\n";
  for (std::size_t t = 0; t < run.liveness.size(); ++t) {
    for (std::size_t i = 0; i < run.liveness[t].size(); ++i) {
      out << run.series[t].tick << ',' << i << ',' << static_cast<int>(run.liveness[t][i]) << '\n';
    }
  }
}

}  // namespace filament
