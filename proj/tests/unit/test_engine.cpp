#include <gtest/gtest.h>

#include <random>

#include "filament/engine.hpp"
#include "filament/rules.hpp"

namespace filament {
namespace {

// Reference update straight from the definition.
Filament reference_step(const Rule& rule, const Filament& f) {
  std::vector<CellState> next(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) next[i] = rule.next(f[i], neighborhood_of(f, i, rule.radius()));
  return Filament(std::move(next));
}

Filament random_filament(std::mt19937_64& rng, std::size_t n, int s) {
  std::vector<CellState> cells(n);
  for (auto& c : cells) c = static_cast<CellState>(rng() % s);
  return Filament(std::move(cells));
}

Filament runs(std::initializer_list<std::pair<CellState, std::size_t>> parts) {
  std::vector<CellState> cells;
  for (auto [state, count] : parts) cells.insert(cells.end(), count, state);
  return Filament(std::move(cells));
}

std::vector<Rule> catalogue() {
  return {automaton_i(), automaton_ii(), clock_rule(2), clock_rule(3), bouncer_rule(), oblivious_example_rule()};
}

TEST(Step, Examples) {
  EXPECT_EQ(step(automaton_i(), Filament{0, 2, 2, 2}), Filament({0, 0, 2, 2}));
  EXPECT_EQ(step(clock_rule(2), Filament{0, 0, 0}), Filament({1, 1, 1}));
  EXPECT_EQ(step(automaton_ii(), Filament{0, 0, 0, 1}), Filament({0, 0, 1, 1}));
  EXPECT_EQ(step(oblivious_example_rule(), Filament{0, 1, 0}), Filament({1, 0, 1}));
}

TEST(Step, MatchesDefinitionOnRandomFilaments) {
  std::mt19937_64 rng(11);
  for (const auto& rule : catalogue()) {
    for (int k = 0; k < 200; ++k) {
      const auto f = random_filament(rng, 1 + rng() % 12, rule.num_states());
      EXPECT_EQ(step(rule, f), reference_step(rule, f)) << rule.name() << ' ' << f.to_string();
    }
  }
}

TEST(Step, IsSynchronous) {
  // Under the clock every non-leftmost cell copies its left neighbor plus
  // one; a sequential sweep would propagate the first change along the row.
  EXPECT_EQ(step(clock_rule(3), Filament{0, 0, 0, 0}), Filament({1, 1, 1, 1}));
  EXPECT_EQ(step(clock_rule(3), Filament{2, 0, 1}), Filament({0, 0, 1}));
}

TEST(Step, RejectsForeignStates) {
  EXPECT_THROW(step(clock_rule(2), Filament{0, 2}), Error);
}

TEST(Trace, ZeroStepsIsInitialOnly) {
  const auto t = run_trace(automaton_i(), Filament{0, 2}, 0);
  ASSERT_EQ(t.states.size(), 1U);
  EXPECT_EQ(t.states[0], Filament({0, 2}));
  EXPECT_EQ(t.rule_name, "automaton-i");
}

TEST(Trace, AutomatonIPrefix) {
  const auto t = run_trace(automaton_i(), Filament{0, 2, 2}, 6);
  const std::vector<Filament> expected = {
      Filament{0, 2, 2}, Filament{0, 0, 2}, Filament{0, 0, 1}, Filament{0, 1, 1},
      Filament{2, 1, 1}, Filament{2, 2, 1}, Filament{2, 2, 0},
  };
  EXPECT_EQ(t.states, expected);
}

TEST(Trace, ClockUnisonAfterNSteps) {
  const auto t = run_trace(clock_rule(3), Filament{0, 1, 2}, 3);
  const auto& last = t.states.back();
  EXPECT_EQ(last[0], last[1]);
  EXPECT_EQ(last[1], last[2]);
}

// Within i steps the i+1 leftmost cells agree; after n-1 steps every cell
// ticks in unison forever.
TEST(Clock, SynchronizesExhaustively) {
  for (int s = 2; s <= 3; ++s) {
    const auto rule = clock_rule(s);
    for (std::size_t n = 1; n <= 6; ++n) {
      std::size_t total = 1;
      for (std::size_t k = 0; k < n; ++k) total *= s;
      for (std::size_t x = 0; x < total; ++x) {
        std::vector<CellState> cells(n);
        auto y = x;
        for (auto& c : cells) {
          c = static_cast<CellState>(y % s);
          y /= s;
        }
        auto f = Filament(cells);
        for (std::size_t t = 1; t <= n + 2 * s; ++t) {
          const auto g = step(rule, f);
          for (std::size_t i = 1; i < n && i <= t; ++i) ASSERT_EQ(g[i], g[0]);
          ASSERT_EQ(g[0], (f[0] + 1) % s);
          f = g;
        }
      }
    }
  }
}

TEST(DetectCycle, Examples) {
  const auto a = detect_cycle(automaton_i(), Filament{0, 2, 2, 2}, default_horizon(4));
  EXPECT_EQ(a, (TrajectoryReport{Cyclic{0, 18, {WaveType::Kind::TypeA, 1}}}));
  EXPECT_EQ(detect_cycle(automaton_i(), Filament{0, 0, 0}, 100), (TrajectoryReport{Quiescent{0}}));
  const auto b = detect_cycle(automaton_ii(), Filament{0, 0, 0, 1}, default_horizon(4));
  ASSERT_TRUE(b.cyclic());
  EXPECT_EQ(b.cycle()->period, 6U);
  // 0011 -> 0122 changes three cells at once.
  EXPECT_EQ(b.cycle()->wave, (WaveType{WaveType::Kind::Mixed, 3}));
  EXPECT_EQ(b.max_cells_changed_per_step_in_cycle(), 3U);
}

TEST(DetectCycle, Unresolved) {
  const auto r = detect_cycle(automaton_i(), Filament{0, 2, 2, 2}, 5);
  EXPECT_EQ(r, (TrajectoryReport{Unresolved{5}}));
  EXPECT_EQ(r.settle_time(), 0U);
  EXPECT_EQ(r.max_cells_changed_per_step_in_cycle(), 0U);
}

TEST(DetectCycle, ExactHorizonResolves) {
  // Period 18 from time 0: the repeat is seen at step 18.
  EXPECT_TRUE(detect_cycle(automaton_i(), Filament{0, 2, 2, 2}, 18).cyclic());
  EXPECT_TRUE(detect_cycle(automaton_i(), Filament{0, 2, 2, 2}, 17).unresolved());
}

// The reported transient and period agree with a naive replay.
TEST(DetectCycle, ReplayAgrees) {
  std::mt19937_64 rng(5);
  for (const auto& rule : catalogue()) {
    for (int k = 0; k < 60; ++k) {
      const auto n = 1 + rng() % 9;
      const auto f = random_filament(rng, n, rule.num_states());
      const auto report = detect_cycle(rule, f, default_horizon(n));
      ASSERT_FALSE(report.unresolved());
      const auto states = run_trace(rule, f, default_horizon(n)).states;
      std::size_t first_repeat = 0, earlier = 0;
      for (std::size_t t = 1; t < states.size() && first_repeat == 0; ++t)
        for (std::size_t u = 0; u < t; ++u)
          if (states[u] == states[t]) {
            first_repeat = t;
            earlier = u;
            break;
          }
      ASSERT_NE(first_repeat, 0U);
      EXPECT_EQ(report.settle_time(), earlier);
      const auto period = first_repeat - earlier;
      if (period == 1) {
        EXPECT_TRUE(report.quiescent());
      } else {
        ASSERT_TRUE(report.cyclic());
        EXPECT_EQ(report.cycle()->period, period);
      }
    }
  }
}

TEST(WaveType, Examples) {
  const auto a = run_trace(automaton_i(), runs({{0, 1}, {2, 4}}), 23).states;
  EXPECT_EQ(wave_type_of(a), (WaveType{WaveType::Kind::TypeA, 1}));
  const std::vector<Filament> clock = {Filament{0, 0, 0}, Filament{1, 1, 1}};
  EXPECT_EQ(wave_type_of(clock).kind, WaveType::Kind::TypeB);
  const std::vector<Filament> flip = {Filament{0, 1}, Filament{1, 0}};
  EXPECT_EQ(wave_type_of(flip).kind, WaveType::Kind::TypeB);
  EXPECT_EQ(std::string(to_string(WaveType::Kind::Mixed)), "mixed");
}

TEST(WaveType, ThresholdMustBeBelowLength) {
  const std::vector<Filament> c = {Filament{0, 0, 0}, Filament{1, 1, 0}};
  EXPECT_EQ(wave_type_of(c, 2), (WaveType{WaveType::Kind::TypeA, 2}));
  EXPECT_EQ(wave_type_of(c, 3), (WaveType{WaveType::Kind::Mixed, 2}));
  EXPECT_EQ(wave_type_of(c, 1), (WaveType{WaveType::Kind::Mixed, 2}));
}

TEST(WaveType, WrapCountsForTypeB) {
  // Every forward step flips all cells, but the wrap back does not.
  const std::vector<Filament> c = {Filament{0, 0}, Filament{1, 1}, Filament{0, 0}, Filament{1, 0}};
  EXPECT_NE(wave_type_of(c, 1).kind, WaveType::Kind::TypeB);
  EXPECT_THROW(wave_type_of(std::vector<Filament>{Filament{0}}), Error);
}

TEST(CountSteps, Examples) {
  EXPECT_EQ(count_steps(Filament{0, 2, 2, 0}), 2U);
  EXPECT_EQ(count_steps(Filament{0, 0, 0}), 0U);
  EXPECT_EQ(count_steps(Filament{0, 1, 2}), 2U);
  EXPECT_EQ(hamming_distance(Filament{0, 1, 2}, Filament{0, 2, 2}), 1U);
  EXPECT_THROW(hamming_distance(Filament{0}, Filament{0, 1}), Error);
}

TEST(AutomatonI, StepParityInvariant) {
  const auto rule = automaton_i();
  for (std::size_t n = 1; n <= 9; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 3;
    std::vector<CellState> cells(n);
    for (std::size_t x = 0; x < total; ++x) {
      auto y = x;
      for (auto& c : cells) {
        c = static_cast<CellState>(y % 3);
        y /= 3;
      }
      const Filament f(cells);
      ASSERT_EQ(count_steps(step(rule, f)) % 2, count_steps(f) % 2) << f.to_string();
    }
  }
}

// Six sweeps of n-1 states each, as a generated oracle.
std::vector<Filament> automaton_i_cycle(std::size_t n) {
  std::vector<Filament> out;
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{0, i}, {2, n - i}}));
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{0, n - i}, {1, i}}));
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{2, i}, {1, n - i}}));
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{2, n - i}, {0, i}}));
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{1, i}, {0, n - i}}));
  for (std::size_t i = 1; i < n; ++i) out.push_back(runs({{1, n - i}, {2, i}}));
  return out;
}

TEST(AutomatonI, NormalCycleSweeps) {
  for (std::size_t n = 3; n <= 12; ++n) {
    const auto expected = automaton_i_cycle(n);
    const auto trace = run_trace(automaton_i(), expected.front(), expected.size()).states;
    ASSERT_EQ(trace.back(), expected.front()) << n;
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(trace[k], expected[k]) << n << ' ' << k;
  }
}

TEST(AutomatonI, DeadFilamentSettles) {
  const auto r = detect_cycle(automaton_i(), Filament{0, 2, 0}, 100);
  EXPECT_TRUE(r.quiescent());
  EXPECT_EQ(r.settle_time(), 1U);
}

std::vector<Filament> automaton_ii_cycle(std::size_t n) {
  std::vector<Filament> out{runs({{0, n - 1}, {1, 1}}), runs({{0, n - 2}, {1, 2}})};
  for (std::size_t i = 3; i < n; ++i) out.push_back(runs({{0, n - i}, {1, 1}, {2, i - 1}}));
  for (std::size_t j = 1; j < n; ++j) out.push_back(runs({{0, j}, {2, n - j}}));
  return out;
}

TEST(AutomatonII, NormalCycleSweeps) {
  for (std::size_t n = 4; n <= 12; ++n) {
    const auto expected = automaton_ii_cycle(n);
    ASSERT_EQ(expected.size(), 2 * (n - 1));
    const auto trace = run_trace(automaton_ii(), expected.front(), expected.size()).states;
    ASSERT_EQ(trace.back(), expected.front()) << n;
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(trace[k], expected[k]) << n << ' ' << k;
  }
}

// A single 0 runs right, doubles at the right end, and the pair runs back.
std::vector<Filament> bounce_cycle_oracle(std::size_t n) {
  std::vector<Filament> out;
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(runs({{1, i}, {0, 1}, {1, n - 1 - i}}));
  for (std::size_t j = n - 1; j-- > 0;) out.push_back(runs({{1, j}, {0, 2}, {1, n - 2 - j}}));
  return out;
}

TEST(Bouncer, BounceCycle) {
  for (std::size_t n = 4; n <= 16; ++n) {
    const auto expected = bounce_cycle_oracle(n);
    const auto trace = run_trace(bouncer_rule(), expected.front(), expected.size()).states;
    ASSERT_EQ(trace.back(), expected.front()) << n;
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(trace[k], expected[k]) << n << ' ' << k;
    const auto report = detect_cycle(bouncer_rule(), expected.front(), default_horizon(n));
    ASSERT_TRUE(report.cyclic());
    EXPECT_EQ(report.cycle()->wave, (WaveType{WaveType::Kind::TypeA, 2}));
  }
}

TEST(Bouncer, PairsMoveLeft) {
  auto f = runs({{1, 6}, {0, 2}, {1, 3}});
  for (std::size_t k = 1; k <= 6; ++k) {
    f = step(bouncer_rule(), f);
    EXPECT_EQ(f, runs({{1, 6 - k}, {0, 2}, {1, 3 + k}}));
  }
}

TEST(Bouncer, LeftEndAbsorbsOneZero) {
  EXPECT_EQ(step(bouncer_rule(), runs({{0, 2}, {1, 5}})), runs({{0, 1}, {1, 6}}));
}

TEST(Bouncer, FrontsCoalesce) {
  // A right-moving single 0 meets a left-moving pair; one front survives.
  const auto trace = run_trace(bouncer_rule(), Filament::parse("0111110011"), 8).states;
  auto zero_blocks = [](const Filament& f) {
    std::size_t blocks = 0;
    for (std::size_t i = 0; i < f.size(); ++i) blocks += f[i] == 0 && (i == 0 || f[i - 1] != 0);
    return blocks;
  };
  EXPECT_EQ(zero_blocks(trace.front()), 2U);
  EXPECT_EQ(zero_blocks(trace.back()), 1U);
  const auto report = detect_cycle(bouncer_rule(), trace.front(), default_horizon(10));
  ASSERT_TRUE(report.cyclic());
  EXPECT_EQ(report.cycle()->period, 18U);
}

TEST(Bouncer, AllOnesIsStuck) {
  // Every cell of [1^n] sees only 1s and Empty, which no entry changes.
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_TRUE(detect_cycle(bouncer_rule(), Filament::uniform(n, 1), 10).quiescent()) << n;
  }
}

}  // namespace
}  // namespace filament
