#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <ranges>
#include <string>
#include <utility>
#include <vector>

#include "filament/analysis.hpp"
#include "filament/core.hpp"

namespace filament {

// ---------------------------------------------------------------------------
// The two-state radius-1 rule space.
//
// A rule is an 18-bit index. Bit b holds the next state for
//   current = b / 9, left = (b % 9) / 3, right = b % 3
// with neighbor symbols 0, 1 and 2 = Empty. This is exactly the dense table
// layout of a two-state radius-1 Rule, so index 0 is the constant-0 rule.

inline constexpr std::uint32_t kRuleSpaceSize = 1U << 18;

Rule rule_from_index(std::uint32_t index);
// Throws unless the rule has two states and radius 1.
std::uint32_t rule_index(const Rule& rule);

inline auto enumerate_rules() {
  return std::views::iota(std::uint32_t{0}, kRuleSpaceSize) |
         std::views::transform([](std::uint32_t i) { return std::pair{i, rule_from_index(i)}; });
}

// Non-oblivious with both states able to reach each other; for two states
// this is "every state has two distinct successors".
bool interesting_in_space(std::uint32_t index);

struct SearchOptions {
  std::vector<std::size_t> lengths = {4, 5, 6, 7, 8, 9, 10};
  std::uint64_t exhaustive_limit = 1U << 14;  // 2^n at or below this: every initial state
  std::uint64_t sample_size = 4096;           // otherwise this many seeded samples
  std::uint64_t seed = 1;
  std::size_t type_a_threshold = 2;
  std::uint64_t work_budget = 0;  // initial states examined before stopping; 0 = no limit
  unsigned workers = 1;
  std::uint32_t first_index = 0;  // rule index range [first_index, end_index)
  std::uint32_t end_index = kRuleSpaceSize;
};

struct Witness {
  std::uint32_t rule_index = 0;
  std::size_t n = 0;
  Filament initial{0};
  std::size_t period = 0;
  std::size_t k_max = 0;

  bool operator==(const Witness&) const = default;
};

struct SearchVerdict {
  SearchOptions params;
  std::uint64_t rules_total = 0;
  std::uint64_t rules_interesting = 0;
  std::uint64_t classes_simulated = 0;  // behavior classes run (per worker)
  std::uint64_t initial_states_examined = 0;
  std::uint64_t rules_with_type_a_cycle = 0;
  std::vector<Witness> witnesses;  // one per (rule, n), sorted
  bool complete = true;

  // Combines verdicts over disjoint index ranges; order does not matter.
  SearchVerdict& merge(const SearchVerdict& other);
};

/// Scans the interesting rules of the space for Type A cycles. Rules that
/// differ only on inputs no filament of the searched lengths can present
/// are simulated once and reported individually.
SearchVerdict search_type_a(const SearchOptions& options = {});

std::string verdict_report(const SearchVerdict& verdict);

// index,oblivious,oblivious_state,strongly_connected,min_out_degree,interesting
void write_rule_space_audit(std::ostream& out, std::uint32_t first = 0, std::uint32_t end = kRuleSpaceSize);

// ---------------------------------------------------------------------------
// Symmetric three-state candidates for viable populations.

enum class HuntSpace {
  // Per state: at most one bulk entry {*,x} -> y and at most one end entry
  // {E,x} -> y with y != current. 49^3 rules.
  TableShaped,
  // Every symmetric radius-1 three-state table: 3^30 rules, budget required.
  FullSymmetric,
};

struct ShapedEntry {
  CellState neighbor = 0;  // x
  CellState next = 0;      // y
  bool operator==(const ShapedEntry&) const = default;
};

struct ShapedState {
  std::optional<ShapedEntry> bulk;
  std::optional<ShapedEntry> end;
  bool operator==(const ShapedState&) const = default;
};

std::uint64_t hunt_space_size(HuntSpace space);
Rule hunt_candidate(HuntSpace space, std::uint64_t index);
std::uint64_t table_shaped_index(const std::array<ShapedState, 3>& states);
std::array<ShapedState, 3> table_shaped_states(std::uint64_t index);

struct HuntOptions {
  HuntSpace space = HuntSpace::TableShaped;
  std::uint64_t first = 0;
  std::uint64_t budget = 0;  // candidates examined; 0 = the rest of the space
  std::size_t n_min = 2;
  std::size_t n_max = 5;
};

struct ViableCandidate {
  std::uint64_t index = 0;
  Rule rule;
  StochasticMatrix matrix;  // (live, dead) accretion matrix, identical for every tested n
  Rational stationary_live_fraction;
  std::vector<Rational> census_live_fraction;  // per n in [n_min, n_max]
};

struct HuntResult {
  HuntOptions params;
  std::uint64_t examined = 0;
  std::uint64_t interesting = 0;
  std::vector<ViableCandidate> viable;
  bool complete = true;
};

/// Keeps candidates whose exact (live, dead) accretion matrix, measured on
/// every filament of each length in [n_min, n_max], does not depend on the
/// length and has a stationary live fraction strictly between 0 and 1.
HuntResult hunt_viable_3state(const HuntOptions& options = {});

std::string hunt_report(const HuntResult& result);

// ---------------------------------------------------------------------------
// Completion of the radius-2 bouncer subset.

struct CompletionOptions {
  std::size_t cycle_min_n = 4;  // the bounce cycle from [0 1^(n-1)] must be kept
  std::size_t cycle_max_n = 32;
  std::size_t converge_min_n = 4;  // scored on every initial state of these lengths
  std::size_t converge_max_n = 10;
};

struct CompletionResult {
  std::vector<RuleEntry> entries;  // state-changing additions, in table order
  std::size_t locked_cells = 0;    // (current, input) pairs the bounce cycle uses
  std::size_t free_cells = 0;
  std::uint64_t converging = 0;  // initial states reaching the bounce cycle
  std::uint64_t total = 0;
  std::vector<Filament> non_converging;
};

/// Greedy search over the inputs the bounce cycle never presents: flip a
/// cell from hold to change whenever that strictly increases the number of
/// initial states that reach the bounce cycle, then drop every flip whose
/// removal costs nothing. Deterministic.
CompletionResult derive_bouncer_completion(const CompletionOptions& options = {});

// Bounce cycle states from [0 1^(n-1)] under `rule`; empty if it is not a cycle.
std::vector<Filament> bounce_cycle(const Rule& rule, std::size_t n);

}  // namespace filament
