#include "filament/core.hpp"

#include <algorithm>
#include <sstream>

namespace filament {

RuleError::RuleError(const std::string& what, int line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

// ---------------------------------------------------------------------------
// Filament

Filament::Filament(std::vector<CellState> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) {
    throw Error("a filament needs at least one cell");
  }
}

Filament::Filament(std::initializer_list<CellState> cells) : Filament(std::vector<CellState>(cells)) {}

Filament Filament::parse(std::string_view digits) {
  std::vector<CellState> cells;
  for (char ch : digits) {
    if (ch == ',' || ch == ' ') {
      continue;
    }
    if (ch < '0' || ch > '9') {
      throw Error("invalid filament character '" + std::string(1, ch) + "'");
    }
    cells.push_back(static_cast<CellState>(ch - '0'));
  }
  return Filament(std::move(cells));
}

Filament Filament::uniform(std::size_t n, CellState state) {
  return Filament(std::vector<CellState>(n, state));
}

Filament Filament::appended(CellState state) const {
  auto cells = cells_;
  cells.push_back(state);
  return Filament(std::move(cells));
}

std::string Filament::to_string() const {
  std::string out;
  out.reserve(cells_.size());
  for (CellState c : cells_) {
    out.push_back(static_cast<char>('0' + c));
  }
  return out;
}

std::size_t FilamentHash::operator()(const Filament& f) const noexcept {
  // FNV-1a over the cell bytes.
  std::size_t h = 1469598103934665603ULL;
  for (CellState c : f.cells()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Neighborhood

namespace {

char symbol_char(MaybeState s) { return s ? static_cast<char>('0' + *s) : 'E'; }

}  // namespace

Neighborhood Neighborhood::mirrored() const {
  Neighborhood m;
  m.radius = radius;
  for (int k = 0; k < radius; ++k) {
    // left is outermost first, right innermost first: reversing each side
    // and swapping them mirrors the window about the cell.
    m.left[k] = right[radius - 1 - k];
    m.right[k] = left[radius - 1 - k];
  }
  return m;
}

bool Neighborhood::well_formed() const {
  if (radius < 1 || radius > kMaxRadius) {
    return false;
  }
  // Reading outward from the cell, once Empty appears it must persist.
  bool seen_empty = false;
  for (int k = radius - 1; k >= 0; --k) {
    if (!left[k]) {
      seen_empty = true;
    } else if (seen_empty) {
      return false;
    }
  }
  seen_empty = false;
  for (int k = 0; k < radius; ++k) {
    if (!right[k]) {
      seen_empty = true;
    } else if (seen_empty) {
      return false;
    }
  }
  return true;
}

std::string Neighborhood::to_string() const {
  std::string out;
  for (int k = 0; k < radius; ++k) out.push_back(symbol_char(left[k]));
  out.push_back(',');
  for (int k = 0; k < radius; ++k) out.push_back(symbol_char(right[k]));
  return out;
}

Neighborhood neighborhood_of(const Filament& filament, std::size_t index, int radius) {
  if (index >= filament.size()) {
    throw Error("cell index " + std::to_string(index) + " out of range for filament of length " +
                std::to_string(filament.size()));
  }
  if (radius < 1 || radius > kMaxRadius) {
    throw Error("radius must be 1 or 2");
  }
  const auto n = static_cast<std::ptrdiff_t>(filament.size());
  const auto i = static_cast<std::ptrdiff_t>(index);
  auto at = [&](std::ptrdiff_t j) -> MaybeState {
    if (j < 0 || j >= n) return kEmpty;
    return filament[static_cast<std::size_t>(j)];
  };
  Neighborhood nb;
  nb.radius = radius;
  for (int k = 0; k < radius; ++k) {
    nb.left[k] = at(i - radius + k);
    nb.right[k] = at(i + 1 + k);
  }
  return nb;
}

std::size_t neighborhood_count(int num_states, int radius) {
  std::size_t count = 1;
  for (int k = 0; k < 2 * radius; ++k) count *= static_cast<std::size_t>(num_states + 1);
  return count;
}

namespace {

Neighborhood decode_neighborhood(std::size_t code, int num_states, int radius) {
  const auto base = static_cast<std::size_t>(num_states + 1);
  std::array<MaybeState, 2 * kMaxRadius> symbols{};
  for (int k = 2 * radius - 1; k >= 0; --k) {
    const auto digit = code % base;
    code /= base;
    symbols[k] = digit == static_cast<std::size_t>(num_states) ? kEmpty
                                                                : MaybeState(static_cast<CellState>(digit));
  }
  Neighborhood nb;
  nb.radius = radius;
  for (int k = 0; k < radius; ++k) {
    nb.left[k] = symbols[k];
    nb.right[k] = symbols[radius + k];
  }
  return nb;
}

std::size_t encode_neighborhood(const Neighborhood& nb, int num_states) {
  const auto base = static_cast<std::size_t>(num_states + 1);
  auto digit = [&](MaybeState s) -> std::size_t {
    return s ? *s : static_cast<std::size_t>(num_states);
  };
  std::size_t code = 0;
  for (int k = 0; k < nb.radius; ++k) code = code * base + digit(nb.left[k]);
  for (int k = 0; k < nb.radius; ++k) code = code * base + digit(nb.right[k]);
  return code;
}

}  // namespace

std::vector<Neighborhood> admissible_neighborhoods(int num_states, int radius) {
  std::vector<Neighborhood> out;
  const auto count = neighborhood_count(num_states, radius);
  for (std::size_t code = 0; code < count; ++code) {
    auto nb = decode_neighborhood(code, num_states, radius);
    if (nb.well_formed()) out.push_back(nb);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Patterns and entries

bool PatternToken::matches(MaybeState s) const noexcept {
  switch (kind) {
    case Kind::Literal:
      return s && *s == value;
    case Kind::Empty:
      return !s;
    case Kind::Any:
      return s.has_value();
  }
  return false;
}

char PatternToken::to_char() const {
  switch (kind) {
    case Kind::Literal:
      return static_cast<char>('0' + value);
    case Kind::Empty:
      return 'E';
    case Kind::Any:
      return '*';
  }
  return '?';
}

namespace {

bool side_matches(const std::array<PatternToken, kMaxRadius>& pattern,
                  const std::array<MaybeState, kMaxRadius>& side, int radius) {
  for (int k = 0; k < radius; ++k) {
    if (!pattern[k].matches(side[k])) return false;
  }
  return true;
}

}  // namespace

bool RuleEntry::matches(CellState cur, const Neighborhood& nbhd, bool symmetric) const noexcept {
  if (cur != current) return false;
  if (side_matches(left, nbhd.left, nbhd.radius) && side_matches(right, nbhd.right, nbhd.radius)) {
    return true;
  }
  if (symmetric) {
    const auto m = nbhd.mirrored();
    return side_matches(left, m.left, m.radius) && side_matches(right, m.right, m.radius);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rule

namespace {

void check_shape(int num_states, int radius) {
  if (num_states < 2 || num_states > kMaxStates) {
    throw RuleError("state count must be in [2, " + std::to_string(kMaxStates) + "], got " +
                    std::to_string(num_states));
  }
  if (radius < 1 || radius > kMaxRadius) {
    throw RuleError("radius must be 1 or 2, got " + std::to_string(radius));
  }
}

std::string describe(const RuleEntry& e, int radius) {
  std::string out = std::to_string(e.current) + " | ";
  for (int k = 0; k < radius; ++k) out.push_back(e.left[k].to_char());
  out.push_back(' ');
  for (int k = 0; k < radius; ++k) out.push_back(e.right[k].to_char());
  out += " -> " + std::to_string(e.next);
  return out;
}

}  // namespace

Rule::Rule(std::string name, int num_states, int radius, bool symmetric, std::vector<RuleEntry> entries)
    : name_(std::move(name)),
      num_states_(num_states),
      radius_(radius),
      symmetric_(symmetric),
      entries_(std::move(entries)) {
  check_shape(num_states_, radius_);
  for (const auto& e : entries_) {
    if (e.current >= num_states_ || e.next >= num_states_) {
      throw RuleError("state out of range in entry " + describe(e, radius_));
    }
    for (int k = 0; k < radius_; ++k) {
      for (const auto& tok : {e.left[k], e.right[k]}) {
        if (tok.kind == PatternToken::Kind::Literal && tok.value >= num_states_) {
          throw RuleError("pattern symbol out of range in entry " + describe(e, radius_));
        }
      }
    }
  }

  neighborhood_count_ = filament::neighborhood_count(num_states_, radius_);
  table_.resize(static_cast<std::size_t>(num_states_) * neighborhood_count_);
  for (int c = 0; c < num_states_; ++c) {
    for (std::size_t code = 0; code < neighborhood_count_; ++code) {
      table_[c * neighborhood_count_ + code] = static_cast<CellState>(c);
    }
  }

  for (const auto& nb : admissible_neighborhoods(num_states_, radius_)) {
    const auto code = encode_neighborhood(nb, num_states_);
    for (int c = 0; c < num_states_; ++c) {
      const RuleEntry* hit = nullptr;
      for (const auto& e : entries_) {
        if (!e.matches(static_cast<CellState>(c), nb, symmetric_)) continue;
        if (hit != nullptr && hit->next != e.next) {
          throw RuleError("ambiguous entries '" + describe(*hit, radius_) + "' and '" + describe(e, radius_) +
                          "' for state " + std::to_string(c) + " with input " + nb.to_string());
        }
        hit = &e;
      }
      if (hit != nullptr) table_[c * neighborhood_count_ + code] = hit->next;
    }
  }
}

Rule Rule::from_table(std::string name, int num_states, int radius, std::span<const CellState> table) {
  check_shape(num_states, radius);
  const auto count = filament::neighborhood_count(num_states, radius);
  if (table.size() != static_cast<std::size_t>(num_states) * count) {
    throw RuleError("dense table has " + std::to_string(table.size()) + " cells, expected " +
                    std::to_string(num_states * count));
  }
  Rule rule;
  rule.name_ = std::move(name);
  rule.num_states_ = num_states;
  rule.radius_ = radius;
  rule.neighborhood_count_ = count;
  rule.table_.resize(table.size());
  for (int c = 0; c < num_states; ++c) {
    for (std::size_t code = 0; code < count; ++code) rule.table_[c * count + code] = static_cast<CellState>(c);
  }
  for (const auto& nb : admissible_neighborhoods(num_states, radius)) {
    const auto code = encode_neighborhood(nb, num_states);
    for (int c = 0; c < num_states; ++c) {
      const CellState next = table[c * count + code];
      if (next >= num_states) {
        throw RuleError("next state out of range in dense table");
      }
      rule.table_[c * count + code] = next;
      if (next == c) continue;
      RuleEntry e;
      e.current = static_cast<CellState>(c);
      e.next = next;
      for (int k = 0; k < radius; ++k) {
        e.left[k] = nb.left[k] ? PatternToken::literal(*nb.left[k]) : PatternToken::empty();
        e.right[k] = nb.right[k] ? PatternToken::literal(*nb.right[k]) : PatternToken::empty();
      }
      rule.entries_.push_back(e);
    }
  }
  return rule;
}

std::size_t Rule::neighborhood_code(const Neighborhood& nbhd) const {
  if (nbhd.radius != radius_) {
    throw Error("neighborhood radius " + std::to_string(nbhd.radius) + " does not match rule radius " +
                std::to_string(radius_));
  }
  for (int k = 0; k < radius_; ++k) {
    for (const auto& s : {nbhd.left[k], nbhd.right[k]}) {
      if (s && *s >= num_states_) {
        throw Error("neighbor state " + std::to_string(*s) + " out of range for rule '" + name_ + "'");
      }
    }
  }
  return encode_neighborhood(nbhd, num_states_);
}

CellState Rule::next(CellState current, const Neighborhood& nbhd) const {
  if (current >= num_states_) {
    throw Error("state " + std::to_string(current) + " out of range for rule '" + name_ + "'");
  }
  return next_by_code(current, neighborhood_code(nbhd));
}

Rule Rule::renamed(std::string name) const {
  Rule copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

CellState match(const Rule& rule, CellState current, const Neighborhood& nbhd) {
  return rule.next(current, nbhd);
}

}  // namespace filament
