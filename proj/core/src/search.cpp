#include "filament/search.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "filament/engine.hpp"
#include "filament/rules.hpp"

namespace filament {

namespace {

// ---------------------------------------------------------------------------
// Whole-state-space maps. Filaments of length n over s states are numbered
// with cell 0 as the most significant base-s digit, so appending a cell on
// the right maps x to x*s + c.

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void decode(std::uint64_t x, int s, std::span<CellState> cells) {
  for (std::size_t i = cells.size(); i-- > 0;) {
    cells[i] = static_cast<CellState>(x % s);
    x /= s;
  }
}

std::uint64_t encode(std::span<const CellState> cells, int s) {
  std::uint64_t x = 0;
  for (CellState c : cells) x = x * s + c;
  return x;
}

Filament decode_filament(std::uint64_t x, int s, std::size_t n) {
  std::vector<CellState> cells(n);
  decode(x, s, cells);
  return Filament(std::move(cells));
}

std::vector<std::uint32_t> transition_map(const Rule& rule, std::size_t n) {
  const int s = rule.num_states();
  const auto total = power(s, n);
  std::vector<std::uint32_t> next(total);
  std::vector<CellState> in(n), out(n);
  for (std::uint64_t x = 0; x < total; ++x) {
    decode(x, s, in);
    step_cells(rule, in, out);
    next[x] = static_cast<std::uint32_t>(encode(out, s));
  }
  return next;
}

std::size_t code_distance(std::uint64_t a, std::uint64_t b, int s, std::size_t n) {
  if (s == 2) return static_cast<std::size_t>(std::popcount(a ^ b));
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    d += (a % s) != (b % s) ? 1 : 0;
    a /= s;
    b /= s;
  }
  return d;
}

struct CycleSummary {
  std::uint32_t basin_start = 0;  // smallest state draining into the cycle
  std::size_t period = 0;
  std::size_t k_max = 0;
  bool every_cell_changes = true;
};

struct GraphSummary {
  std::vector<std::int32_t> cycle_of;  // per state
  std::vector<CycleSummary> cycles;
};

// Functional-graph decomposition: every trajectory of the map ends in one
// of the returned cycles.
GraphSummary analyze(const std::vector<std::uint32_t>& next, int s, std::size_t n) {
  const auto total = next.size();
  GraphSummary g;
  g.cycle_of.assign(total, -1);
  std::vector<std::int32_t> on_path(total, -1);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < total; ++start) {
    if (g.cycle_of[start] >= 0) continue;
    path.clear();
    std::uint32_t x = start;
    while (g.cycle_of[x] < 0 && on_path[x] < 0) {
      on_path[x] = static_cast<std::int32_t>(path.size());
      path.push_back(x);
      x = next[x];
    }
    std::int32_t id = g.cycle_of[x];
    if (id < 0) {
      id = static_cast<std::int32_t>(g.cycles.size());
      CycleSummary c;
      c.basin_start = start;
      c.period = path.size() - static_cast<std::size_t>(on_path[x]);
      for (std::size_t k = static_cast<std::size_t>(on_path[x]); k < path.size(); ++k) {
        const auto d = code_distance(path[k], next[path[k]], s, n);
        c.k_max = std::max(c.k_max, d);
        c.every_cell_changes = c.every_cell_changes && d == n;
      }
      g.cycles.push_back(c);
    }
    for (auto p : path) {
      g.cycle_of[p] = id;
      on_path[p] = -1;
    }
  }
  return g;
}

bool is_type_a(std::size_t period, std::size_t k_max, bool every_cell_changes, std::size_t n, std::size_t threshold) {
  return period >= 2 && !every_cell_changes && k_max <= threshold && threshold < n;
}

// Live/dead per state: the trajectory ends in a cycle of period >= 2.
std::vector<std::uint8_t> live_labels(const Rule& rule, std::size_t n) {
  const auto next = transition_map(rule, n);
  const auto g = analyze(next, rule.num_states(), n);
  std::vector<std::uint8_t> live(next.size());
  for (std::size_t x = 0; x < next.size(); ++x) live[x] = g.cycles[g.cycle_of[x]].period >= 2 ? 1 : 0;
  return live;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rule space

Rule rule_from_index(std::uint32_t index) {
  if (index >= kRuleSpaceSize) throw Error("rule index out of range");
  std::array<CellState, 18> table{};
  for (std::size_t b = 0; b < table.size(); ++b) table[b] = static_cast<CellState>((index >> b) & 1U);
  return Rule::from_table("space-" + std::to_string(index), 2, 1, table);
}

std::uint32_t rule_index(const Rule& rule) {
  if (rule.num_states() != 2 || rule.radius() != 1) {
    throw Error("only two-state radius-1 rules have a rule-space index");
  }
  std::uint32_t index = 0;
  const auto table = rule.table();
  for (std::size_t b = 0; b < table.size(); ++b) index |= static_cast<std::uint32_t>(table[b]) << b;
  return index;
}

bool interesting_in_space(std::uint32_t index) {
  // All 9 inputs of each state, including the lone-cell (E, E) input.
  const std::uint32_t zero_row = index & 0x1FFU;
  const std::uint32_t one_row = (index >> 9) & 0x1FFU;
  auto two_successors = [](std::uint32_t row) { return row != 0 && row != 0x1FFU; };
  return two_successors(zero_row) && two_successors(one_row);
}

SearchVerdict& SearchVerdict::merge(const SearchVerdict& other) {
  rules_total += other.rules_total;
  rules_interesting += other.rules_interesting;
  classes_simulated += other.classes_simulated;
  initial_states_examined += other.initial_states_examined;
  complete = complete && other.complete;
  witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
  std::sort(witnesses.begin(), witnesses.end(), [](const Witness& a, const Witness& b) {
    return std::tie(a.rule_index, a.n) < std::tie(b.rule_index, b.n);
  });
  std::vector<std::uint32_t> rules;
  for (const auto& w : witnesses) rules.push_back(w.rule_index);
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  rules_with_type_a_cycle = rules.size();
  return *this;
}

namespace {

// Inputs (E, E) exist only for n = 1.
constexpr std::uint32_t kLoneCellBits = (1U << 8) | (1U << 17);

struct ClassWitness {
  std::size_t n;
  Filament initial;
  std::size_t period;
  std::size_t k_max;
};

std::vector<ClassWitness> simulate_class(std::uint32_t canonical, const SearchOptions& options, std::uint64_t& examined) {
  const auto rule = rule_from_index(canonical);
  std::vector<ClassWitness> found;
  for (const auto n : options.lengths) {
    const auto total = power(2, n);
    if (total <= options.exhaustive_limit) {
      examined += total;
      const auto g = analyze(transition_map(rule, n), 2, n);
      for (const auto& c : g.cycles) {
        if (is_type_a(c.period, c.k_max, c.every_cell_changes, n, options.type_a_threshold)) {
          found.push_back({n, decode_filament(c.basin_start, 2, n), c.period, c.k_max});
          break;
        }
      }
    } else {
      examined += options.sample_size;
      std::mt19937_64 rng(options.seed ^ (static_cast<std::uint64_t>(canonical) << 20) ^ n);
      std::vector<CellState> cells(n);
      for (std::uint64_t k = 0; k < options.sample_size; ++k) {
        for (auto& c : cells) c = static_cast<CellState>(rng() & 1U);
        const Filament f(cells);
        const auto report = detect_cycle(rule, f, default_horizon(n), options.type_a_threshold);
        if (const auto* cyc = report.cycle(); cyc && cyc->wave.kind == WaveType::Kind::TypeA) {
          found.push_back({n, f, cyc->period, cyc->wave.k_max});
          break;
        }
      }
    }
  }
  return found;
}

SearchVerdict search_range(const SearchOptions& options, std::uint32_t first, std::uint32_t end) {
  SearchVerdict v;
  v.params = options;
  const bool dedupe = !options.lengths.empty() &&
                      *std::min_element(options.lengths.begin(), options.lengths.end()) >= 2;
  const std::uint32_t mask = dedupe ? ~kLoneCellBits : ~0U;
  std::unordered_map<std::uint32_t, std::vector<ClassWitness>> simulated;
  for (std::uint32_t index = first; index < end; ++index) {
    ++v.rules_total;
    if (!interesting_in_space(index)) continue;
    ++v.rules_interesting;
    const auto canonical = index & mask;
    auto it = simulated.find(canonical);
    if (it == simulated.end()) {
      if (options.work_budget != 0 && v.initial_states_examined >= options.work_budget) {
        v.complete = false;
        break;
      }
      it = simulated.emplace(canonical, simulate_class(canonical, options, v.initial_states_examined)).first;
      ++v.classes_simulated;
    }
    for (const auto& w : it->second) v.witnesses.push_back({index, w.n, w.initial, w.period, w.k_max});
  }
  return v;
}

}  // namespace

SearchVerdict search_type_a(const SearchOptions& options) {
  if (options.lengths.empty()) throw Error("search needs at least one filament length");
  if (options.first_index > options.end_index || options.end_index > kRuleSpaceSize) {
    throw Error("rule index range out of bounds");
  }
  for (auto n : options.lengths) {
    if (n < 1 || n > 30) throw Error("search lengths must lie in [1, 30]");
    if (power(2, n) <= options.exhaustive_limit && n > 24) throw Error("exhaustive limit too large");
  }
  const unsigned workers = std::max(1U, options.workers);
  const auto span = options.end_index - options.first_index;
  SearchOptions per_worker = options;
  if (options.work_budget != 0) per_worker.work_budget = std::max<std::uint64_t>(1, options.work_budget / workers);

  std::vector<SearchVerdict> parts(workers);
  std::vector<std::thread> threads;
  const auto chunk = (span + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const auto begin = options.first_index + std::min(span, w * chunk);
    const auto end = options.first_index + std::min(span, w * chunk + chunk);
    if (workers == 1) {
      parts[w] = search_range(per_worker, begin, end);
    } else {
      threads.emplace_back([&, w, begin, end] { parts[w] = search_range(per_worker, begin, end); });
    }
  }
  for (auto& t : threads) t.join();

  SearchVerdict verdict;
  verdict.params = options;
  for (const auto& p : parts) verdict.merge(p);
  return verdict;
}

std::string verdict_report(const SearchVerdict& v) {
  std::ostringstream out;
  out << "# parameters\n";
  out << "lengths: ";
  for (std::size_t i = 0; i < v.params.lengths.size(); ++i) out << (i ? "," : "") << v.params.lengths[i];
  out << '\n'
      << "exhaustive_limit: " << v.params.exhaustive_limit << '\n'
      << "sample_size: " << v.params.sample_size << '\n'
      << "seed: " << v.params.seed << '\n'
      << "type_a_threshold: " << v.params.type_a_threshold << '\n'
      << "work_budget: " << v.params.work_budget << '\n'
      << "index_range: " << v.params.first_index << ".." << v.params.end_index << '\n';
  out << "# counts\n"
      << "rules_total: " << v.rules_total << '\n'
      << "rules_interesting: " << v.rules_interesting << '\n'
      << "classes_simulated: " << v.classes_simulated << '\n'
      << "initial_states_examined: " << v.initial_states_examined << '\n'
      << "rules_with_type_a_cycle: " << v.rules_with_type_a_cycle << '\n'
      << "complete: " << (v.complete ? "true" : "false") << '\n';
  out << "# witnesses\n";
  if (v.witnesses.empty()) out << "none\n";
  for (const auto& w : v.witnesses) {
    out << "rule " << w.rule_index << " n " << w.n << " initial " << w.initial.to_string() << " period " << w.period
        << " k_max " << w.k_max << '\n';
  }
  return out.str();
}

void write_rule_space_audit(std::ostream& out, std::uint32_t first, std::uint32_t end) {
  out << "index,oblivious,oblivious_state,strongly_connected,min_out_degree,interesting\n";
  std::array<CellState, 18> table{};
  for (std::uint32_t index = first; index < end && index < kRuleSpaceSize; ++index) {
    for (std::size_t b = 0; b < table.size(); ++b) table[b] = static_cast<CellState>((index >> b) & 1U);
    const auto c = classify_table(2, 1, table);
    out << index << ',' << (c.oblivious ? 1 : 0) << ','
        << (c.oblivious_state ? std::to_string(*c.oblivious_state) : std::string("-")) << ','
        << (c.strongly_connected ? 1 : 0) << ',' << c.min_out_degree << ',' << (c.interesting ? 1 : 0) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Viable-population hunt

namespace {

// Unordered neighbor pairs over {0, 1, 2, E}, E written as 3.
constexpr std::array<std::pair<int, int>, 10> kSymmetricPairs = {{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3},
}};

PatternToken pair_token(int v) { return v == 3 ? PatternToken::empty() : PatternToken::literal(static_cast<CellState>(v)); }

// Digit d in [1, 7) of a shaped slot: neighbor (d-1)/2, target the
// ((d-1)%2)-th state other than `current`.
std::optional<ShapedEntry> decode_slot(std::uint64_t digit, CellState current) {
  if (digit == 0) return std::nullopt;
  const auto neighbor = static_cast<CellState>((digit - 1) / 2);
  const auto which = (digit - 1) % 2;
  std::array<CellState, 2> others{};
  std::size_t k = 0;
  for (CellState c = 0; c < 3; ++c)
    if (c != current) others[k++] = c;
  return ShapedEntry{neighbor, others[which]};
}

std::uint64_t encode_slot(const std::optional<ShapedEntry>& e, CellState current) {
  if (!e) return 0;
  if (e->neighbor > 2 || e->next > 2 || e->next == current) throw Error("invalid shaped entry");
  std::uint64_t which = 0;
  for (CellState c = 0; c < e->next; ++c)
    if (c != current) ++which;
  return 1 + 2 * static_cast<std::uint64_t>(e->neighbor) + which;
}

}  // namespace

std::uint64_t hunt_space_size(HuntSpace space) {
  return space == HuntSpace::TableShaped ? power(49, 3) : power(3, 30);
}

std::array<ShapedState, 3> table_shaped_states(std::uint64_t index) {
  if (index >= hunt_space_size(HuntSpace::TableShaped)) throw Error("table-shaped index out of range");
  std::array<ShapedState, 3> states;
  for (CellState c = 0; c < 3; ++c) {
    const auto digit = index % 49;
    index /= 49;
    states[c].bulk = decode_slot(digit / 7, c);
    states[c].end = decode_slot(digit % 7, c);
  }
  return states;
}

std::uint64_t table_shaped_index(const std::array<ShapedState, 3>& states) {
  std::uint64_t index = 0;
  for (int c = 2; c >= 0; --c) {
    const auto cur = static_cast<CellState>(c);
    index = index * 49 + encode_slot(states[c].bulk, cur) * 7 + encode_slot(states[c].end, cur);
  }
  return index;
}

Rule hunt_candidate(HuntSpace space, std::uint64_t index) {
  std::vector<RuleEntry> entries;
  if (space == HuntSpace::TableShaped) {
    const auto states = table_shaped_states(index);
    for (CellState c = 0; c < 3; ++c) {
      if (const auto& b = states[c].bulk) {
        entries.push_back({c, {PatternToken::any(), {}}, {PatternToken::literal(b->neighbor), {}}, b->next});
      }
      if (const auto& e = states[c].end) {
        entries.push_back({c, {PatternToken::empty(), {}}, {PatternToken::literal(e->neighbor), {}}, e->next});
      }
    }
    return Rule("shaped-" + std::to_string(index), 3, 1, true, std::move(entries));
  }
  if (index >= hunt_space_size(HuntSpace::FullSymmetric)) throw Error("symmetric index out of range");
  const auto name = "symmetric-" + std::to_string(index);
  for (CellState c = 0; c < 3; ++c) {
    for (const auto& [a, b] : kSymmetricPairs) {
      const auto next = static_cast<CellState>(index % 3);
      index /= 3;
      if (next == c) continue;
      entries.push_back({c, {pair_token(a), {}}, {pair_token(b), {}}, next});
    }
  }
  return Rule(name, 3, 1, true, std::move(entries));
}

HuntResult hunt_viable_3state(const HuntOptions& options) {
  if (options.n_min < 2 || options.n_max < options.n_min || options.n_max > 9) {
    throw Error("hunt lengths must satisfy 2 <= n_min <= n_max <= 9");
  }
  const auto size = hunt_space_size(options.space);
  if (options.space == HuntSpace::FullSymmetric && options.budget == 0) {
    throw Error("the full symmetric space needs an explicit budget");
  }
  HuntResult result;
  result.params = options;
  const auto first = std::min(options.first, size);
  const auto end = options.budget == 0 ? size : std::min(size, first + options.budget);
  result.complete = end == size;

  for (std::uint64_t index = first; index < end; ++index) {
    ++result.examined;
    const auto rule = hunt_candidate(options.space, index);
    if (!classify_rule(rule).interesting) continue;
    ++result.interesting;

    std::optional<StochasticMatrix> reference;
    std::vector<Rational> fractions;
    bool viable = true;
    auto labels = live_labels(rule, options.n_min);
    for (std::size_t n = options.n_min; n <= options.n_max && viable; ++n) {
      const auto longer = live_labels(rule, n + 1);
      std::array<std::array<std::uint64_t, 2>, 2> counts{};
      std::uint64_t live = 0;
      for (std::size_t x = 0; x < labels.size(); ++x) {
        const int from = labels[x] ? 0 : 1;
        live += labels[x];
        for (std::size_t c = 0; c < 3; ++c) {
          const int to = longer[x * 3 + c] ? 0 : 1;
          ++counts[from][to];
        }
      }
      if (live == 0 || live == labels.size()) {
        viable = false;
        break;
      }
      StochasticMatrix m{{"live", "dead"}, {}};
      for (int i = 0; i < 2; ++i) {
        const auto row_total = counts[i][0] + counts[i][1];
        m.p.push_back({Rational(counts[i][0], row_total), Rational(counts[i][1], row_total)});
      }
      if (reference && !(m == *reference)) viable = false;
      if (!reference) reference = m;
      fractions.emplace_back(live, labels.size());
      labels = longer;
    }
    if (!viable) continue;
    const auto& p = reference->p;
    const Rational into_live = p[1][0];
    const Rational out_of_live = p[0][1];
    // Absorbing live or dead classes pin the stationary fraction at 1 or 0.
    if (into_live == 0 || out_of_live == 0) continue;
    result.viable.push_back({index, rule, *reference, into_live / (into_live + out_of_live), std::move(fractions)});
  }
  return result;
}

std::string hunt_report(const HuntResult& r) {
  std::ostringstream out;
  out << "# parameters\n"
      << "space: " << (r.params.space == HuntSpace::TableShaped ? "table-shaped" : "full-symmetric") << '\n'
      << "first: " << r.params.first << '\n'
      << "budget: " << r.params.budget << '\n'
      << "lengths: " << r.params.n_min << ".." << r.params.n_max << '\n'
      << "# counts\n"
      << "examined: " << r.examined << '\n'
      << "interesting: " << r.interesting << '\n'
      << "viable: " << r.viable.size() << '\n'
      << "complete: " << (r.complete ? "true" : "false") << '\n'
      << "# candidates\n";
  if (r.viable.empty()) out << "none\n";
  for (const auto& v : r.viable) {
    out << "index " << v.index << " live_fraction " << v.stationary_live_fraction << " P(live->live) "
        << v.matrix.p[0][0] << " P(dead->live) " << v.matrix.p[1][0] << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Bouncer completion

std::vector<Filament> bounce_cycle(const Rule& rule, std::size_t n) {
  std::vector<CellState> cells(n, 1);
  cells[0] = 0;
  const Filament start(cells);
  const auto report = detect_cycle(rule, start, default_horizon(n));
  const auto* cyc = report.cycle();
  if (cyc == nullptr || cyc->transient != 0) return {};
  return run_trace(rule, start, cyc->period - 1).states;
}

namespace {

struct Scorer {
  const CompletionOptions& options;
  std::vector<std::vector<std::uint64_t>> cycle_codes;  // per n in the converge range

  std::uint64_t operator()(const Rule& rule, std::vector<Filament>* failures = nullptr) const {
    std::uint64_t good = 0;
    for (std::size_t n = options.converge_min_n; n <= options.converge_max_n; ++n) {
      const auto next = transition_map(rule, n);
      // 0 unknown, 1 reaches the bounce cycle, 2 does not.
      std::vector<std::uint8_t> fate(next.size(), 0);
      for (auto c : cycle_codes[n - options.converge_min_n]) fate[c] = 1;
      // The bounce states must still form the cycle under this rule.
      for (auto c : cycle_codes[n - options.converge_min_n]) {
        if (fate[next[c]] != 1) return 0;
      }
      std::vector<std::uint32_t> path;
      std::vector<std::uint8_t> on_path(next.size(), 0);
      for (std::uint32_t start = 0; start < next.size(); ++start) {
        path.clear();
        std::uint32_t x = start;
        while (fate[x] == 0 && !on_path[x]) {
          on_path[x] = 1;
          path.push_back(x);
          x = next[x];
        }
        const std::uint8_t result = fate[x] == 0 ? 2 : fate[x];
        for (auto p : path) {
          fate[p] = result;
          on_path[p] = 0;
        }
      }
      for (std::uint32_t x = 0; x < next.size(); ++x) {
        if (fate[x] == 1) {
          ++good;
        } else if (failures != nullptr) {
          failures->push_back(decode_filament(x, 2, n));
        }
      }
    }
    return good;
  }
};

}  // namespace

CompletionResult derive_bouncer_completion(const CompletionOptions& options) {
  if (options.cycle_min_n < 4 || options.converge_min_n < 4 || options.converge_max_n > 16 ||
      options.converge_min_n > options.converge_max_n || options.cycle_min_n > options.cycle_max_n) {
    throw Error("completion lengths must start at 4 and converge_max_n must be <= 16");
  }
  const auto base = bouncer_subset_rule();
  const auto count = base.neighborhood_count();
  std::vector<CellState> table(base.table().begin(), base.table().end());

  // Inputs presented anywhere along the bounce cycle keep their behavior.
  std::vector<bool> locked(table.size(), false);
  for (std::size_t n = options.cycle_min_n; n <= options.cycle_max_n; ++n) {
    const auto cycle = bounce_cycle(base, n);
    if (cycle.empty()) throw Error("bouncer subset lost its bounce cycle at n = " + std::to_string(n));
    for (const auto& f : cycle) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        locked[f[i] * count + base.neighborhood_code(neighborhood_of(f, i, 2))] = true;
      }
    }
  }

  CompletionResult result;
  std::vector<std::size_t> free_cells;
  for (const auto& nb : admissible_neighborhoods(2, 2)) {
    const auto code = base.neighborhood_code(nb);
    for (std::size_t c = 0; c < 2; ++c) {
      const auto cell = c * count + code;
      if (locked[cell]) {
        ++result.locked_cells;
      } else if (table[cell] == c) {
        free_cells.push_back(cell);
      }
    }
  }
  std::sort(free_cells.begin(), free_cells.end());
  result.free_cells = free_cells.size();

  Scorer score{options, {}};
  for (std::size_t n = options.converge_min_n; n <= options.converge_max_n; ++n) {
    std::vector<std::uint64_t> codes;
    for (const auto& f : bounce_cycle(base, n)) codes.push_back(encode(f.cells(), 2));
    score.cycle_codes.push_back(std::move(codes));
  }

  auto flip = [&](std::size_t cell) { table[cell] = static_cast<CellState>(1 - table[cell]); };
  auto evaluate = [&] { return score(Rule::from_table("candidate", 2, 2, table)); };

  auto best = evaluate();
  for (bool improved = true; improved;) {
    improved = false;
    for (auto cell : free_cells) {
      flip(cell);
      const auto s = evaluate();
      if (s > best) {
        best = s;
        improved = true;
      } else {
        flip(cell);
      }
    }
  }
  for (auto cell : free_cells) {
    if (table[cell] == cell / count) continue;
    flip(cell);
    if (evaluate() < best) flip(cell);
  }

  const auto completed = Rule::from_table("bouncer", 2, 2, table);
  result.converging = score(completed, &result.non_converging);
  for (std::size_t n = options.converge_min_n; n <= options.converge_max_n; ++n) result.total += power(2, n);
  for (const auto& e : completed.entries()) {
    const bool in_subset = std::any_of(bouncer_subset_entries().begin(), bouncer_subset_entries().end(),
                                       [&](const RuleEntry& s) { return s == e; });
    if (!in_subset) result.entries.push_back(e);
  }
  return result;
}

}  // namespace filament
