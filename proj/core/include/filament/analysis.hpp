#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "filament/core.hpp"
#include "filament/engine.hpp"

namespace filament {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Liveness { Live, Dead };

const char* to_string(Liveness l);

// Live iff the filament has an odd number of steps.
Liveness predict_automaton_i(const Filament& filament);
// Live iff exactly one end cell is 0.
Liveness predict_automaton_ii(const Filament& filament);

using Predictor = std::function<Liveness(const Filament&)>;

struct NamedPredictor {
  std::string name;
  Predictor predict;
};

// The closed-form predictor matching a catalogue rule, looked up by name.
std::optional<NamedPredictor> predictor_for(const Rule& rule);

struct ParityCounts {
  BigInt odd;
  BigInt even;
};

// Length-n three-state filaments with an odd / even number of steps.
ParityCounts parity_counts(std::size_t n);

struct Census {
  std::string rule_name;
  std::size_t n = 0;
  std::uint64_t total = 0;
  std::uint64_t live = 0;
  std::uint64_t quiescent = 0;
  std::uint64_t unresolved = 0;
  std::size_t max_settle_time = 0;
  std::uint64_t prediction_mismatches = 0;
  std::string predictor = "none";
  std::optional<Filament> first_mismatch;  // lexicographically first

  // Merges a census over a later, disjoint range of the same enumeration.
  Census& merge(const Census& later);
};

struct CensusOptions {
  std::optional<std::size_t> horizon;  // default_horizon(n) when unset
  std::uint64_t budget = 10'000'000;   // largest s^n enumerated
  unsigned workers = 1;
  std::optional<NamedPredictor> predictor;  // predictor_for(rule) when unset
};

// The k-th length-n filament in lexicographic order (cell 0 most significant).
Filament filament_from_index(std::uint64_t index, std::size_t n, int num_states);

// Classifies lexicographic indices [begin, end) of the s^n enumeration.
Census census_range(const Rule& rule, std::size_t n, std::uint64_t begin, std::uint64_t end,
                    const CensusOptions& options = {});

/// Classifies every length-n filament and checks it against the predictor.
Census census(const Rule& rule, std::size_t n, const CensusOptions& options = {});

// key: value lines.
std::string census_report(const Census& c);

/// Row-stochastic matrix with exact entries; rows are "from", columns "to".
struct StochasticMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> p;

  std::size_t size() const { return labels.size(); }
  bool rows_sum_to_one() const;
  // Row vector times matrix.
  std::vector<Rational> apply(const std::vector<Rational>& distribution) const;
  bool is_stationary(const std::vector<Rational>& distribution) const;
  // Unique stationary distribution by exact elimination.
  std::vector<Rational> stationary() const;

  bool operator==(const StochasticMatrix&) const = default;
};

enum class GrowthModel { AutomatonI, AutomatonII };

// Effect of appending one uniformly random cell.
// AutomatonI: over (live, dead). AutomatonII: over the end classes
// (both-ends-0, one-end-0, no-end-0).
StochasticMatrix growth_transition_matrix(GrowthModel model);
std::vector<Rational> stated_stationary(GrowthModel model);

enum class EndClass { BothEndsZero = 0, OneEndZero = 1, NoEndZero = 2 };
EndClass end_class(const Filament& filament);

// Exact transition frequencies from appending each of the s states to each
// length-n filament. `classify` maps a filament to a class in [0, labels).
StochasticMatrix empirical_growth_matrix(std::size_t n, int num_states, std::vector<std::string> labels,
                                         const std::function<std::size_t(const Filament&)>& classify);

}  // namespace filament
