#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "filament/analysis.hpp"
#include "filament/population.hpp"
#include "filament/rules.hpp"
#include "filament/search.hpp"

namespace filament::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw UsageError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::size_t need_length(std::optional<std::size_t> length, std::string_view spec) {
  if (!length) throw UsageError("initial pattern '" + std::string(spec) + "' needs --length");
  if (*length == 0) throw UsageError("--length must be >= 1");
  return *length;
}

// "5", "n", "n-1", optionally wrapped in braces.
std::size_t parse_exponent(std::string text, std::optional<std::size_t> length, std::string_view spec) {
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.empty()) throw UsageError("empty exponent in '" + std::string(spec) + "'");
  if (text[0] != 'n') return parse_size(text, "exponent");
  const auto n = need_length(length, spec);
  if (text.size() == 1) return n;
  if (text[1] != '-') throw UsageError("bad exponent '" + text + "'");
  const auto k = parse_size(std::string_view(text).substr(2), "exponent");
  if (k > n) throw UsageError("exponent '" + text + "' is negative for n = " + std::to_string(n));
  return n - k;
}

void check_states(const std::vector<CellState>& cells, int num_states) {
  for (auto c : cells) {
    if (c >= num_states) {
      throw UsageError("initial state " + std::to_string(c) + " out of range for a " + std::to_string(num_states) +
                       "-state rule");
    }
  }
}

// Where a subcommand writes: stdout or --out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::vector<std::size_t> parse_lengths(const std::string& text) {
  std::vector<std::size_t> lengths;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_size(trim(text.substr(0, dots)), "length");
    const auto hi = parse_size(trim(text.substr(dots + 2)), "length");
    if (lo > hi) throw UsageError("empty length range '" + text + "'");
    for (auto n = lo; n <= hi; ++n) lengths.push_back(n);
    return lengths;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) lengths.push_back(parse_size(trim(item), "length"));
  if (lengths.empty()) throw UsageError("no lengths given");
  return lengths;
}

void print_classification(std::ostream& out, const Rule& rule) {
  const auto c = classify_rule(rule);
  out << "name: " << rule.name() << '\n'
      << "states: " << rule.num_states() << '\n'
      << "radius: " << rule.radius() << '\n'
      << "symmetric: " << (rule.symmetric() ? "true" : "false") << '\n'
      << "entries: " << rule.entries().size() << '\n'
      << "oblivious: " << (c.oblivious ? "true" : "false") << '\n'
      << "oblivious_state: " << (c.oblivious_state ? std::to_string(*c.oblivious_state) : std::string("-")) << '\n'
      << "strongly_connected: " << (c.strongly_connected ? "true" : "false") << '\n'
      << "min_out_degree: " << c.min_out_degree << '\n'
      << "interesting: " << (c.interesting ? "true" : "false") << '\n';
  for (std::size_t a = 0; a < c.successors.size(); ++a) {
    out << "successors " << a << ':';
    for (auto b : c.successors[a]) out << ' ' << static_cast<int>(b);
    out << '\n';
  }
}

void print_trajectory(std::ostream& out, const Rule& rule, const Filament& initial, const TrajectoryReport& r) {
  out << "rule: " << rule.name() << '\n' << "initial: " << initial.to_string() << '\n';
  if (const auto* q = std::get_if<Quiescent>(&r.outcome)) {
    out << "outcome: quiescent\n" << "settle_time: " << q->settle_time << '\n';
  } else if (const auto* c = r.cycle()) {
    out << "outcome: cyclic\n"
        << "transient: " << c->transient << '\n'
        << "period: " << c->period << '\n'
        << "wave: " << to_string(c->wave.kind) << '\n'
        << "k_max: " << c->wave.k_max << '\n';
  } else {
    out << "outcome: unresolved\n" << "horizon: " << std::get<Unresolved>(r.outcome).horizon << '\n';
  }
}

void write_turnover_csv(std::ostream& out, const TurnoverReport& report) {
  out << "window_start,window_end,live_at_end,symmetric_difference,contains_growth\n";
  for (const auto& w : report.windows) {
    out << w.first_tick << ',' << w.last_tick << ',' << w.live_at_end << ',' << w.symmetric_difference << ','
        << (w.contains_growth ? 1 : 0) << '\n';
  }
}

}  // namespace

Rule resolve_rule(const std::string& source) {
  if (auto rule = catalogue_rule(source)) return *rule;
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    std::string names;
    for (const auto& n : catalogue_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown rule '" + source + "' (not a file; built-ins: " + names + ")");
  }
  std::stringstream text;
  text << in.rdbuf();
  try {
    return parse_rule(text.str());
  } catch (const RuleError& e) {
    throw RuleError(source + ": " + e.what(), e.line());
  }
}

Filament parse_initial(std::string_view spec_view, std::optional<std::size_t> length, int num_states) {
  const auto spec = trim(spec_view);
  if (spec.empty()) throw UsageError("empty initial pattern");
  std::vector<CellState> cells;

  if (spec.starts_with("uniform:")) {
    const auto d = parse_size(spec.substr(8), "uniform state");
    if (d > kMaxStates) throw UsageError("uniform state out of range");
    cells.assign(need_length(length, spec), static_cast<CellState>(d));
  } else if (spec.starts_with("random:")) {
    const auto seed = parse_size(spec.substr(7), "random seed");
    std::mt19937_64 rng(seed);
    cells.resize(need_length(length, spec));
    for (auto& c : cells) c = static_cast<CellState>(rng() % static_cast<std::uint64_t>(num_states));
  } else if (spec == "zeros-then-ones") {
    const auto n = need_length(length, spec);
    cells.assign(n, 1);
    std::fill(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n / 2), CellState{0});
  } else {
    std::string body = spec;
    if (body.front() == '[') {
      if (body.back() != ']') throw UsageError("unbalanced '[' in '" + spec + "'");
      body = body.substr(1, body.size() - 2);
    }
    // Runs of digits, each optionally raised to an exponent.
    std::size_t i = 0;
    while (i < body.size()) {
      const char ch = body[i];
      if (ch == ' ' || ch == ',') {
        ++i;
        continue;
      }
      if (ch < '0' || ch > '9') throw UsageError("unexpected '" + std::string(1, ch) + "' in '" + spec + "'");
      const auto state = static_cast<CellState>(ch - '0');
      ++i;
      std::size_t count = 1;
      if (i < body.size() && body[i] == '^') {
        ++i;
        std::string exponent;
        if (i < body.size() && body[i] == '{') {
          const auto close = body.find('}', i);
          if (close == std::string::npos) throw UsageError("unbalanced '{' in '" + spec + "'");
          exponent = body.substr(i, close - i + 1);
          i = close + 1;
        } else {
          while (i < body.size() && body[i] != ' ' && body[i] != ',') exponent += body[i++];
        }
        count = parse_exponent(exponent, length, spec);
      }
      cells.insert(cells.end(), count, state);
    }
    if (length && cells.size() != *length) {
      throw UsageError("pattern '" + spec + "' has " + std::to_string(cells.size()) + " cells but --length is " +
                       std::to_string(*length));
    }
  }
  if (cells.empty()) throw UsageError("initial pattern '" + spec + "' has no cells");
  check_states(cells, num_states);
  return Filament(std::move(cells));
}

int pixel_of(CellState state, int num_states) {
  switch (state) {
    case 0:
      return 0;
    case 1:
      return 255;
    case 2:
      return 128;
    default:
      // Remaining states share the dark-to-light range between the fixed three.
      return 32 + (192 * (state - 3)) / std::max(1, num_states - 3);
  }
}

void render_ascii(std::ostream& out, const Trace& trace) {
  for (const auto& f : trace.states) out << f.to_string() << '\n';
}

void render_pgm(std::ostream& out, const Trace& trace, int num_states, std::size_t scale) {
  if (scale < 1) throw UsageError("--scale must be >= 1");
  const auto width = trace.states.front().size() * scale;
  const auto height = trace.states.size() * scale;
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (const auto& f : trace.states) {
    std::string row;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto value = std::to_string(pixel_of(f[i], num_states));
      for (std::size_t k = 0; k < scale; ++k) {
        if (!row.empty()) row += ' ';
        row += value;
      }
    }
    for (std::size_t k = 0; k < scale; ++k) out << row << '\n';
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filamental cellular automata laboratory", "filament-lab"};
  app.require_subcommand(1);
  app.fallthrough(false);

  int status = kOk;
  std::string rule_source;
  std::string initial;
  std::optional<std::size_t> length;
  std::string out_path;
  std::optional<std::size_t> horizon;
  std::size_t threshold = kDefaultTypeAThreshold;
  unsigned workers = 1;

  // trace
  auto* trace = app.add_subcommand("trace", "Run a rule and render the spacetime trace");
  std::size_t steps = 0;
  std::string format = "ascii";
  std::size_t scale = 1;
  trace->add_option("-r,--rule", rule_source, "Built-in rule name or rule file")->required();
  trace->add_option("-i,--initial", initial, "Initial state or pattern")->required();
  trace->add_option("-n,--length", length, "Filament length for patterns");
  trace->add_option("-t,--steps", steps, "Number of steps")->required();
  trace->add_option("-f,--format", format, "ascii or pgm")->check(CLI::IsMember({"ascii", "pgm"}));
  trace->add_option("--scale", scale, "PGM pixels per cell")->check(CLI::PositiveNumber);
  trace->add_option("-o,--out", out_path, "Output file (default stdout)");
  trace->callback([&] {
    const auto rule = resolve_rule(rule_source);
    const auto start = parse_initial(initial, length, rule.num_states());
    const auto t = run_trace(rule, start, steps);
    Sink sink(out_path, out);
    if (format == "pgm") {
      render_pgm(sink.stream(), t, rule.num_states(), scale);
    } else {
      render_ascii(sink.stream(), t);
    }
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Detect the transient, cycle and wave type of one trajectory");
  classify->add_option("-r,--rule", rule_source, "Built-in rule name or rule file")->required();
  classify->add_option("-i,--initial", initial, "Initial state or pattern")->required();
  classify->add_option("-n,--length", length, "Filament length for patterns");
  classify->add_option("--horizon", horizon, "Steps before giving up (default 50n+100)");
  classify->add_option("--type-a-threshold", threshold, "Largest per-step change count of a Type A wave");
  classify->callback([&] {
    const auto rule = resolve_rule(rule_source);
    const auto start = parse_initial(initial, length, rule.num_states());
    const auto report = detect_cycle(rule, start, horizon.value_or(default_horizon(start.size())), threshold);
    print_trajectory(out, rule, start, report);
    if (report.unresolved()) status = kIncomplete;
  });

  // census
  auto* census_cmd = app.add_subcommand("census", "Classify every filament of one length");
  std::size_t census_n = 0;
  std::uint64_t census_budget = CensusOptions{}.budget;
  census_cmd->add_option("-r,--rule", rule_source, "Built-in rule name or rule file")->required();
  census_cmd->add_option("-n,--length", census_n, "Filament length")->required()->check(CLI::PositiveNumber);
  census_cmd->add_option("--horizon", horizon, "Steps per trajectory (default 50n+100)");
  census_cmd->add_option("--budget", census_budget, "Largest s^n to enumerate");
  census_cmd->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  census_cmd->callback([&] {
    const auto rule = resolve_rule(rule_source);
    CensusOptions options;
    options.horizon = horizon;
    options.budget = census_budget;
    options.workers = workers;
    const auto c = census(rule, census_n, options);
    out << census_report(c);
    if (c.unresolved > 0) status = kIncomplete;
  });

  // population
  auto* population = app.add_subcommand("population", "Run a growing population of filaments and write CSV");
  std::size_t m = 0, n0 = 0, ticks = 0;
  std::optional<std::size_t> interval_per_cell;
  std::optional<std::size_t> growth_interval;
  std::optional<std::uint64_t> seed;
  std::string metric = "activity";
  std::string growth_cells = "uniform";
  std::string liveness_path;
  std::string turnover_path;
  std::size_t turnover_window = 0;
  std::vector<std::string> initial_members;
  population->add_option("-r,--rule", rule_source, "Built-in rule name or rule file")->required();
  population->add_option("-m,--m", m, "Population size")->required()->check(CLI::PositiveNumber);
  population->add_option("--n0", n0, "Initial filament length")->required()->check(CLI::PositiveNumber);
  population->add_option("--ticks", ticks, "Ticks to simulate")->required();
  population->add_option("--growth-interval", growth_interval, "Ticks between growths (default 6*n0 or 2*n0)")
      ->check(CLI::PositiveNumber);
  population->add_option("--interval-per-cell", interval_per_cell,
                         "Schedule each growth this many ticks per current cell after the last")
      ->check(CLI::PositiveNumber);
  population->add_option("--seed", seed, "Random seed (required)")->required();
  population->add_option("--metric", metric, "activity or classification")
      ->check(CLI::IsMember({"activity", "classification"}));
  population->add_option("--growth-cells", growth_cells, "uniform or cycling")
      ->check(CLI::IsMember({"uniform", "cycling"}));
  population->add_option("--initial", initial_members, "Explicit initial filaments (exactly m)");
  population->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  population->add_option("-o,--out", out_path, "CSV output file (default stdout)");
  population->add_option("--liveness-out", liveness_path, "Per-filament liveness CSV");
  population->add_option("--turnover-out", turnover_path, "Turnover CSV (needs --turnover-window)");
  population->add_option("--turnover-window", turnover_window, "Ticks per turnover window");
  population->callback([&] {
    const auto rule = resolve_rule(rule_source);
    std::vector<Filament> members;
    for (const auto& spec : initial_members) members.push_back(parse_initial(spec, n0, rule.num_states()));
    const PopulationConfig config{
        .rule = rule,
        .m = m,
        .n0 = n0,
        .total_ticks = ticks,
        .growth_interval = growth_interval.value_or(default_growth_interval(rule, n0)),
        .seed = *seed,
        .live_metric = metric == "activity" ? LiveMetric::ActivityBased : LiveMetric::ClassificationBased,
        .growth_cells = growth_cells == "uniform" ? GrowthCells::Uniform : GrowthCells::Cycling,
        .interval_per_cell = interval_per_cell,
        .initial = std::move(members),
        .record_liveness = !liveness_path.empty() || turnover_window != 0,
        .workers = workers,
    };
    if (turnover_path.empty() != (turnover_window == 0)) {
      throw UsageError("--turnover-out and --turnover-window go together");
    }
    const auto run = run_population(config);
    Sink sink(out_path, out);
    write_population_csv(sink.stream(), run);
    if (!liveness_path.empty()) {
      Sink live(liveness_path, out);
      write_liveness_csv(live.stream(), run);
    }
    if (turnover_window != 0) {
      Sink turn(turnover_path, out);
      write_turnover_csv(turn.stream(), turnover_report(run, turnover_window));
    }
  });

  // search
  auto* search = app.add_subcommand("search", "Scan the two-state radius-1 rule space for Type A waves");
  SearchOptions search_options;
  std::string lengths = "4..10";
  std::string audit_path;
  search->add_option("--lengths", lengths, "Filament lengths, e.g. 4..10 or 4,6,8");
  search->add_option("--exhaustive-limit", search_options.exhaustive_limit,
                     "Enumerate every initial state when 2^n is at most this");
  search->add_option("--sample-size", search_options.sample_size, "Sampled initial states per longer length");
  search->add_option("--seed", search_options.seed, "Seed for sampled initial states");
  search->add_option("--type-a-threshold", search_options.type_a_threshold,
                     "Largest per-step change count of a Type A wave");
  search->add_option("--budget", search_options.work_budget, "Initial states to examine before stopping (0 = all)");
  search->add_option("--first", search_options.first_index, "First rule index");
  search->add_option("--end", search_options.end_index, "One past the last rule index");
  search->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("-o,--out", out_path, "Verdict output file (default stdout)");
  search->add_option("--audit-out", audit_path, "Per-rule classification CSV");
  search->callback([&] {
    search_options.lengths = parse_lengths(lengths);
    search_options.workers = workers;
    const auto verdict = search_type_a(search_options);
    Sink sink(out_path, out);
    sink.stream() << verdict_report(verdict);
    if (!audit_path.empty()) {
      Sink audit(audit_path, out);
      write_rule_space_audit(audit.stream(), search_options.first_index, search_options.end_index);
    }
    if (!verdict.complete) status = kIncomplete;
  });

  // hunt
  auto* hunt = app.add_subcommand("hunt", "Look for symmetric three-state rules with viable populations");
  HuntOptions hunt_options;
  std::string space = "table-shaped";
  hunt->add_option("--space", space, "table-shaped or full-symmetric")
      ->check(CLI::IsMember({"table-shaped", "full-symmetric"}));
  hunt->add_option("--first", hunt_options.first, "First candidate index");
  hunt->add_option("--budget", hunt_options.budget, "Candidates to examine (0 = rest of the space)");
  hunt->add_option("--n-min", hunt_options.n_min, "Shortest filament length checked");
  hunt->add_option("--n-max", hunt_options.n_max, "Longest filament length checked");
  hunt->add_option("-o,--out", out_path, "Report output file (default stdout)");
  hunt->callback([&] {
    hunt_options.space = space == "table-shaped" ? HuntSpace::TableShaped : HuntSpace::FullSymmetric;
    const auto result = hunt_viable_3state(hunt_options);
    Sink sink(out_path, out);
    sink.stream() << hunt_report(result);
    if (!result.complete) status = kIncomplete;
  });

  // rule-info
  auto* info = app.add_subcommand("rule-info", "Print the structural classification of a rule");
  info->add_option("rule", rule_source, "Built-in rule name or rule file")->required();
  info->callback([&] { print_classification(out, resolve_rule(rule_source)); });

  // rule-fmt
  auto* fmt = app.add_subcommand("rule-fmt", "Parse a rule and write it back in canonical form");
  fmt->add_option("rule", rule_source, "Built-in rule name or rule file")->required();
  fmt->add_option("-o,--out", out_path, "Output file (default stdout)");
  fmt->callback([&] {
    Sink sink(out_path, out);
    sink.stream() << serialize_rule(resolve_rule(rule_source));
  });

  std::vector<std::string> argv_storage{"filament-lab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    // Library errors all stem from bad input.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return status;
}

}  // namespace filament::cli
