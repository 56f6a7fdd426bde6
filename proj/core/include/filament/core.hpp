#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace filament {

using CellState = std::uint8_t;

// A neighbor read: a cell's state, or the empty marker seen past either end.
using MaybeState = std::optional<CellState>;
inline constexpr MaybeState kEmpty = std::nullopt;

// Single-digit tokens in rule files and ASCII traces cap the state count.
inline constexpr int kMaxStates = 10;
inline constexpr int kMaxRadius = 2;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or contradictory rule definitions. line() is 1-based for parse
// errors and 0 when the error is not tied to a line of text.
class RuleError : public Error {
 public:
  explicit RuleError(const std::string& what, int line = 0);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An ordered, nonempty string of cell states.
class Filament {
 public:
  explicit Filament(std::vector<CellState> cells);
  Filament(std::initializer_list<CellState> cells);

  // "0222" or "0,2,2,2"; every character other than separators must be a digit.
  static Filament parse(std::string_view digits);
  static Filament uniform(std::size_t n, CellState state);

  std::size_t size() const noexcept { return cells_.size(); }
  CellState operator[](std::size_t i) const noexcept { return cells_[i]; }
  std::span<const CellState> cells() const noexcept { return cells_; }

  Filament appended(CellState state) const;
  std::string to_string() const;

  bool operator==(const Filament&) const = default;

 private:
  std::vector<CellState> cells_;
};

struct FilamentHash {
  std::size_t operator()(const Filament& f) const noexcept;
};

/// What a cell sees around itself. `left` is stored outermost first and
/// `right` innermost first, so the two sides read in filament order.
/// Only the first `radius` slots of each side are meaningful.
struct Neighborhood {
  int radius = 1;
  std::array<MaybeState, kMaxRadius> left{};
  std::array<MaybeState, kMaxRadius> right{};

  bool operator==(const Neighborhood&) const = default;

  // Left and right exchanged, each side still in filament order.
  Neighborhood mirrored() const;

  // Empty entries on each side are contiguous and outermost.
  bool well_formed() const;

  std::string to_string() const;
};

Neighborhood neighborhood_of(const Filament& filament, std::size_t index, int radius);

// Every well-formed neighborhood with symbols in {0..num_states-1, Empty}.
std::vector<Neighborhood> admissible_neighborhoods(int num_states, int radius);

struct PatternToken {
  enum class Kind : std::uint8_t { Literal, Empty, Any };

  Kind kind = Kind::Any;
  CellState value = 0;

  static constexpr PatternToken literal(CellState v) { return {Kind::Literal, v}; }
  static constexpr PatternToken empty() { return {Kind::Empty, 0}; }
  static constexpr PatternToken any() { return {Kind::Any, 0}; }

  // Any matches every cell state but never Empty.
  bool matches(MaybeState s) const noexcept;
  char to_char() const;

  bool operator==(const PatternToken&) const = default;
};

struct RuleEntry {
  CellState current = 0;
  std::array<PatternToken, kMaxRadius> left{};   // outermost first
  std::array<PatternToken, kMaxRadius> right{};  // innermost first
  CellState next = 0;

  bool matches(CellState cur, const Neighborhood& nbhd, bool symmetric) const noexcept;
  bool operator==(const RuleEntry&) const = default;
};

/// A transition table over (current state, neighborhood). Inputs that no
/// entry matches hold the current state. Entries are compiled into a dense
/// table at construction; overlapping entries that disagree are rejected.
class Rule {
 public:
  Rule(std::string name, int num_states, int radius, bool symmetric, std::vector<RuleEntry> entries);

  // Ordered rule from a dense next-state table indexed as
  // current * neighborhood_count() + neighborhood code.
  static Rule from_table(std::string name, int num_states, int radius, std::span<const CellState> table);

  const std::string& name() const noexcept { return name_; }
  int num_states() const noexcept { return num_states_; }
  int radius() const noexcept { return radius_; }
  bool symmetric() const noexcept { return symmetric_; }
  std::span<const RuleEntry> entries() const noexcept { return entries_; }

  CellState next(CellState current, const Neighborhood& nbhd) const;

  // Neighborhood codes are base-(s+1) numbers over the 2r neighbor symbols
  // in filament order, with Empty encoded as s.
  std::size_t neighborhood_count() const noexcept { return neighborhood_count_; }
  std::size_t neighborhood_code(const Neighborhood& nbhd) const;
  CellState next_by_code(CellState current, std::size_t code) const noexcept {
    return table_[current * neighborhood_count_ + code];
  }
  std::span<const CellState> table() const noexcept { return table_; }

  Rule renamed(std::string name) const;

 private:
  Rule() = default;

  std::string name_;
  int num_states_ = 2;
  int radius_ = 1;
  bool symmetric_ = false;
  std::vector<RuleEntry> entries_;
  std::size_t neighborhood_count_ = 0;
  std::vector<CellState> table_;
};

CellState match(const Rule& rule, CellState current, const Neighborhood& nbhd);

// (s+1)^(2r)
std::size_t neighborhood_count(int num_states, int radius);

}  // namespace filament
