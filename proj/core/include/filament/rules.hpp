#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "filament/core.hpp"

namespace filament {

struct RuleClassification {
  bool oblivious = false;
  std::optional<CellState> oblivious_state;  // first state with a single successor
  bool strongly_connected = false;
  int min_out_degree = 0;
  bool interesting = false;
  // successors[a] lists the distinct next states of a, ascending.
  std::vector<std::vector<CellState>> successors;
};

// Successor digraph over every admissible input, hold self-loops included.
RuleClassification classify_rule(const Rule& rule);
RuleClassification classify_table(int num_states, int radius, std::span<const CellState> table);

/// Leftmost cell counts mod s; every other cell becomes (left neighbor + 1) mod s.
Rule clock_rule(int num_states);

/// The two-state rule whose state 1 always falls back to 0.
Rule oblivious_example_rule();

/// Two-state radius-2 rule with a single 0 bouncing between the ends.
/// The given state-changing subset plus a derived completion.
Rule bouncer_rule();

/// Only the given subset of the bouncer, everything else holding.
Rule bouncer_subset_rule();
std::span<const RuleEntry> bouncer_subset_entries();
std::span<const RuleEntry> bouncer_completion_entries();

Rule automaton_i();
Rule automaton_ii();

// Built-in rules by name: "oblivious", "bouncer", "bouncer-subset",
// "automaton-i", "automaton-ii", "clock-<s>".
std::optional<Rule> catalogue_rule(std::string_view name);
std::vector<std::string> catalogue_names();

// Line-oriented text format:
//   states <s>
//   radius <1|2>
//   symmetric <true|false>
//   <current> | <left tokens> <right tokens> -> <next>
// Tokens are a digit, E (empty) or * (any state). '#' starts a comment and a
// "# name: <label>" comment names the rule when no name is passed in.
Rule parse_rule(std::string_view text, std::optional<std::string> name = std::nullopt);
std::string serialize_rule(const Rule& rule);

}  // namespace filament
