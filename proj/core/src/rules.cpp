#include "filament/rules.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace filament {

namespace {

PatternToken token_from_char(char ch) {
  if (ch == '*') return PatternToken::any();
  if (ch == 'E' || ch == 'e') return PatternToken::empty();
  if (ch >= '0' && ch <= '9') return PatternToken::literal(static_cast<CellState>(ch - '0'));
  throw RuleError("invalid pattern token '" + std::string(1, ch) + "'");
}

// `pattern` is 2r tokens in filament order, e.g. "E011" for radius 2.
RuleEntry make_entry(CellState current, std::string_view pattern, CellState next) {
  RuleEntry e;
  e.current = current;
  e.next = next;
  const auto radius = pattern.size() / 2;
  for (std::size_t k = 0; k < radius; ++k) {
    e.left[k] = token_from_char(pattern[k]);
    e.right[k] = token_from_char(pattern[radius + k]);
  }
  return e;
}

// The given state-changing subset, left side outermost first, right side
// innermost first.
const std::vector<RuleEntry> kBouncerSubset = {
    make_entry(0, "1111", 1), make_entry(1, "1011", 0), make_entry(1, "10EE", 0), make_entry(1, "1100", 0),
    make_entry(0, "10EE", 1), make_entry(0, "101E", 1), make_entry(0, "1011", 1), make_entry(1, "E100", 0),
    make_entry(1, "EE00", 0), make_entry(0, "EE11", 1), make_entry(0, "E011", 1), make_entry(1, "E011", 0),
    make_entry(0, "E111", 1), make_entry(1, "101E", 0),
};

// Completion found by `derive_bouncer_completion` (filament/search.hpp);
// regenerate with `filament-derive-bouncer` and keep data/rules/bouncer.rule
// in step.
const std::vector<RuleEntry> kBouncerCompletion = {
    make_entry(0, "0011", 1), make_entry(0, "001E", 1), make_entry(0, "00EE", 1), make_entry(0, "010E", 1),
    make_entry(0, "0111", 1), make_entry(0, "01EE", 1), make_entry(1, "110E", 0),
};

}  // namespace

// ---------------------------------------------------------------------------
// Classification

RuleClassification classify_table(int num_states, int radius, std::span<const CellState> table) {
  const auto count = neighborhood_count(num_states, radius);
  const auto admissible = admissible_neighborhoods(num_states, radius);
  // Codes of admissible neighborhoods, computed through a throwaway rule of
  // the same shape so the encoding stays in one place.
  const Rule shape("shape", num_states, radius, false, {});

  std::vector<std::vector<bool>> edge(num_states, std::vector<bool>(num_states, false));
  for (const auto& nb : admissible) {
    const auto code = shape.neighborhood_code(nb);
    for (int a = 0; a < num_states; ++a) {
      edge[a][table[a * count + code]] = true;
    }
  }

  RuleClassification out;
  out.successors.resize(num_states);
  out.min_out_degree = num_states;
  for (int a = 0; a < num_states; ++a) {
    for (int b = 0; b < num_states; ++b) {
      if (edge[a][b]) out.successors[a].push_back(static_cast<CellState>(b));
    }
    const int degree = static_cast<int>(out.successors[a].size());
    out.min_out_degree = std::min(out.min_out_degree, degree);
    if (degree == 1 && !out.oblivious) {
      out.oblivious = true;
      out.oblivious_state = static_cast<CellState>(a);
    }
  }

  // Transitive closure; the state graphs here have at most kMaxStates nodes.
  auto reach = edge;
  for (int k = 0; k < num_states; ++k)
    for (int i = 0; i < num_states; ++i)
      for (int j = 0; j < num_states; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  out.strongly_connected = true;
  for (int i = 0; i < num_states && out.strongly_connected; ++i)
    for (int j = 0; j < num_states; ++j)
      if (i != j && !reach[i][j]) {
        out.strongly_connected = false;
        break;
      }

  out.interesting = out.strongly_connected && out.min_out_degree > 1 && !out.oblivious;
  return out;
}

RuleClassification classify_rule(const Rule& rule) {
  return classify_table(rule.num_states(), rule.radius(), rule.table());
}

// ---------------------------------------------------------------------------
// Catalogue

Rule clock_rule(int num_states) {
  if (num_states < 2 || num_states > kMaxStates) {
    throw RuleError("clock rule needs a state count in [2, " + std::to_string(kMaxStates) + "]");
  }
  const int s = num_states;
  std::vector<RuleEntry> entries;
  for (int c = 0; c < s; ++c) {
    const auto cur = static_cast<CellState>(c);
    const auto inc = static_cast<CellState>((c + 1) % s);
    entries.push_back(make_entry(cur, "E*", inc));
    entries.push_back(make_entry(cur, "EE", inc));
    for (int l = 0; l < s; ++l) {
      const auto copy = static_cast<CellState>((l + 1) % s);
      const char left = static_cast<char>('0' + l);
      entries.push_back(make_entry(cur, std::string{left, '*'}, copy));
      entries.push_back(make_entry(cur, std::string{left, 'E'}, copy));
    }
  }
  return Rule("clock-" + std::to_string(s), s, 1, false, std::move(entries));
}

Rule oblivious_example_rule() {
  // State 1 falls to 0 on every input, the empty neighbor included, so it
  // is spelled out over every admissible input.
  std::vector<RuleEntry> entries = {
      make_entry(0, "00", 0), make_entry(0, "01", 1), make_entry(0, "0E", 0), make_entry(0, "10", 1),
      make_entry(0, "11", 1), make_entry(0, "1E", 1), make_entry(0, "E0", 0), make_entry(0, "E1", 1),
      make_entry(1, "**", 0), make_entry(1, "*E", 0), make_entry(1, "E*", 0), make_entry(1, "EE", 0),
  };
  return Rule("oblivious", 2, 1, false, std::move(entries));
}

std::span<const RuleEntry> bouncer_subset_entries() { return kBouncerSubset; }
std::span<const RuleEntry> bouncer_completion_entries() { return kBouncerCompletion; }

Rule bouncer_subset_rule() { return Rule("bouncer-subset", 2, 2, false, kBouncerSubset); }

Rule bouncer_rule() {
  std::vector<RuleEntry> entries = kBouncerSubset;
  entries.insert(entries.end(), kBouncerCompletion.begin(), kBouncerCompletion.end());
  return Rule("bouncer", 2, 2, false, std::move(entries));
}

Rule automaton_i() {
  // The bulk transition for state 2 is {*,0} -> 0; see the note in
  // data/rules/automaton-i.rule about the inactive {*,E} row.
  std::vector<RuleEntry> entries = {
      make_entry(0, "*1", 1), make_entry(0, "E1", 2), make_entry(1, "*2", 2),
      make_entry(1, "E2", 0), make_entry(2, "*0", 0), make_entry(2, "E0", 1),
  };
  return Rule("automaton-i", 3, 1, true, std::move(entries));
}

Rule automaton_ii() {
  std::vector<RuleEntry> entries = {
      make_entry(0, "*1", 1), make_entry(1, "*0", 2), make_entry(1, "E1", 2),
      make_entry(2, "*0", 0), make_entry(2, "E0", 1),
  };
  return Rule("automaton-ii", 3, 1, true, std::move(entries));
}

std::optional<Rule> catalogue_rule(std::string_view name) {
  if (name == "oblivious") return oblivious_example_rule();
  if (name == "bouncer") return bouncer_rule();
  if (name == "bouncer-subset") return bouncer_subset_rule();
  if (name == "automaton-i") return automaton_i();
  if (name == "automaton-ii") return automaton_ii();
  constexpr std::string_view clock_prefix = "clock-";
  if (name.starts_with(clock_prefix)) {
    const auto digits = name.substr(clock_prefix.size());
    int s = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && s >= 2 && s <= kMaxStates) {
      return clock_rule(s);
    }
  }
  return std::nullopt;
}

std::vector<std::string> catalogue_names() {
  return {"oblivious", "clock-<s>", "bouncer", "bouncer-subset", "automaton-i", "automaton-ii"};
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view s, int line, const char* what) {
  int value = 0;
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw RuleError(std::string("expected an integer for ") + what + ", got '" + std::string(s) + "'", line);
  }
  return value;
}

}  // namespace

Rule parse_rule(std::string_view text, std::optional<std::string> name) {
  std::optional<int> states;
  std::optional<int> radius;
  std::optional<bool> symmetric;
  std::optional<std::string> comment_name;
  std::vector<RuleEntry> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(line.substr(hash + 1));
      if (comment.starts_with("name:")) comment_name = std::string(trim(comment.substr(5)));
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.find('|') == std::string_view::npos) {
      const auto space = line.find_first_of(" \t");
      const auto key = line.substr(0, space);
      const auto value = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
      if (!entries.empty()) {
        throw RuleError("header line '" + std::string(key) + "' after entries", line_no);
      }
      if (key == "states") {
        states = parse_int(value, line_no, "states");
      } else if (key == "radius") {
        radius = parse_int(value, line_no, "radius");
      } else if (key == "symmetric") {
        if (value == "true") {
          symmetric = true;
        } else if (value == "false") {
          symmetric = false;
        } else {
          throw RuleError("symmetric must be 'true' or 'false'", line_no);
        }
      } else {
        throw RuleError("unknown header '" + std::string(key) + "'", line_no);
      }
      continue;
    }

    if (!states || !radius || !symmetric) {
      throw RuleError("entry before the states/radius/symmetric header is complete", line_no);
    }
    if (*radius < 1 || *radius > kMaxRadius) {
      throw RuleError("radius must be 1 or 2", line_no);
    }
    const auto bar = line.find('|');
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos || arrow < bar) {
      throw RuleError("expected '<current> | <pattern> -> <next>'", line_no);
    }
    const int current = parse_int(line.substr(0, bar), line_no, "current state");
    const int next = parse_int(line.substr(arrow + 2), line_no, "next state");
    std::string pattern;
    for (char ch : line.substr(bar + 1, arrow - bar - 1)) {
      if (ch != ' ' && ch != '\t' && ch != ',') pattern.push_back(ch);
    }
    if (pattern.size() != static_cast<std::size_t>(2 * *radius)) {
      throw RuleError("pattern needs " + std::to_string(2 * *radius) + " tokens, got " +
                          std::to_string(pattern.size()),
                      line_no);
    }
    if (current < 0 || current >= *states || next < 0 || next >= *states) {
      throw RuleError("state out of range for states " + std::to_string(*states), line_no);
    }
    RuleEntry e;
    try {
      e = make_entry(static_cast<CellState>(current), pattern, static_cast<CellState>(next));
    } catch (const RuleError& err) {
      throw RuleError(err.what(), line_no);
    }
    for (int k = 0; k < *radius; ++k) {
      for (const auto& tok : {e.left[k], e.right[k]}) {
        if (tok.kind == PatternToken::Kind::Literal && tok.value >= *states) {
          throw RuleError("pattern symbol out of range for states " + std::to_string(*states), line_no);
        }
      }
    }
    entries.push_back(e);
  }

  if (!states || !radius || !symmetric) {
    throw RuleError("missing states/radius/symmetric header");
  }
  std::string label = name ? *name : comment_name.value_or("custom");
  return Rule(std::move(label), *states, *radius, *symmetric, std::move(entries));
}

std::string serialize_rule(const Rule& rule) {
  std::ostringstream out;
  out << "states " << rule.num_states() << '\n';
  out << "radius " << rule.radius() << '\n';
  out << "symmetric " << (rule.symmetric() ? "true" : "false") << '\n';
  out << "# name: " << rule.name() << '\n';
  for (const auto& e : rule.entries()) {
    out << static_cast<int>(e.current) << " |";
    for (int k = 0; k < rule.radius(); ++k) out << ' ' << e.left[k].to_char();
    for (int k = 0; k < rule.radius(); ++k) out << ' ' << e.right[k].to_char();
    out << " -> " << static_cast<int>(e.next) << '\n';
  }
  return out.str();
}

}  // namespace filament
