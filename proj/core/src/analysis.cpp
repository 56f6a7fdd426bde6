#include "filament/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include <boost/multiprecision/integer.hpp>

namespace filament {

const char* to_string(Liveness l) { return l == Liveness::Live ? "live" : "dead"; }

Liveness predict_automaton_i(const Filament& filament) {
  return count_steps(filament) % 2 == 1 ? Liveness::Live : Liveness::Dead;
}

Liveness predict_automaton_ii(const Filament& filament) {
  const bool left_zero = filament[0] == 0;
  const bool right_zero = filament[filament.size() - 1] == 0;
  return (left_zero != right_zero) ? Liveness::Live : Liveness::Dead;
}

std::optional<NamedPredictor> predictor_for(const Rule& rule) {
  if (rule.name() == "automaton-i") return NamedPredictor{"step-parity", predict_automaton_i};
  if (rule.name() == "automaton-ii") return NamedPredictor{"end-zero", predict_automaton_ii};
  return std::nullopt;
}

ParityCounts parity_counts(std::size_t n) {
  if (n == 0) {
    throw Error("parity counts need n >= 1");
  }
  const BigInt total = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n));
  ParityCounts out;
  if (n % 2 == 0) {
    out.odd = (total + 3) / 2;
    out.even = (total - 3) / 2;
  } else {
    out.odd = (total - 3) / 2;
    out.even = (total + 3) / 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census

Census& Census::merge(const Census& later) {
  total += later.total;
  live += later.live;
  quiescent += later.quiescent;
  unresolved += later.unresolved;
  max_settle_time = std::max(max_settle_time, later.max_settle_time);
  prediction_mismatches += later.prediction_mismatches;
  if (!first_mismatch && later.first_mismatch) first_mismatch = later.first_mismatch;
  return *this;
}

Filament filament_from_index(std::uint64_t index, std::size_t n, int num_states) {
  std::vector<CellState> cells(n);
  for (std::size_t i = n; i-- > 0;) {
    cells[i] = static_cast<CellState>(index % num_states);
    index /= num_states;
  }
  return Filament(std::move(cells));
}

namespace {

std::uint64_t enumeration_size(int num_states, std::size_t n, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / static_cast<std::uint64_t>(num_states)) {
      throw Error("census of " + std::to_string(num_states) + "^" + std::to_string(n) +
                  " filaments exceeds the budget of " + std::to_string(budget));
    }
    total *= static_cast<std::uint64_t>(num_states);
  }
  if (total > budget) {
    throw Error("census exceeds the budget of " + std::to_string(budget));
  }
  return total;
}

}  // namespace

Census census_range(const Rule& rule, std::size_t n, std::uint64_t begin, std::uint64_t end,
                    const CensusOptions& options) {
  const auto horizon = options.horizon.value_or(default_horizon(n));
  const auto predictor = options.predictor ? options.predictor : predictor_for(rule);

  Census c;
  c.rule_name = rule.name();
  c.n = n;
  if (predictor) c.predictor = predictor->name;
  for (std::uint64_t index = begin; index < end; ++index) {
    const auto f = filament_from_index(index, n, rule.num_states());
    const auto report = detect_cycle(rule, f, horizon);
    ++c.total;
    if (report.cyclic()) {
      ++c.live;
    } else if (report.quiescent()) {
      ++c.quiescent;
    } else {
      ++c.unresolved;
    }
    if (!report.unresolved()) c.max_settle_time = std::max(c.max_settle_time, report.settle_time());
    if (predictor) {
      const bool predicted_live = predictor->predict(f) == Liveness::Live;
      const bool mismatch = report.unresolved() || predicted_live != report.cyclic();
      if (mismatch) {
        ++c.prediction_mismatches;
        if (!c.first_mismatch) c.first_mismatch = f;
      }
    }
  }
  return c;
}

Census census(const Rule& rule, std::size_t n, const CensusOptions& options) {
  if (n == 0) throw Error("census needs n >= 1");
  const auto total = enumeration_size(rule.num_states(), n, options.budget);
  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1 || total < workers) {
    return census_range(rule, n, 0, total, options);
  }

  std::vector<Census> parts(workers);
  std::vector<std::thread> threads;
  const auto chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const auto begin = std::min<std::uint64_t>(total, w * chunk);
    const auto end = std::min<std::uint64_t>(total, begin + chunk);
    threads.emplace_back([&, w, begin, end] { parts[w] = census_range(rule, n, begin, end, options); });
  }
  for (auto& t : threads) t.join();

  Census merged = parts.front();
  for (std::size_t w = 1; w < parts.size(); ++w) merged.merge(parts[w]);
  return merged;
}

std::string census_report(const Census& c) {
  std::ostringstream out;
  out << "rule: " << c.rule_name << '\n'
      << "n: " << c.n << '\n'
      << "total: " << c.total << '\n'
      << "live: " << c.live << '\n'
      << "quiescent: " << c.quiescent << '\n'
      << "unresolved: " << c.unresolved << '\n'
      << "max_settle_time: " << c.max_settle_time << '\n'
      << "predictor: " << c.predictor << '\n'
      << "prediction_mismatches: " << c.prediction_mismatches << '\n'
      << "first_mismatch: " << (c.first_mismatch ? c.first_mismatch->to_string() : "none") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Growth matrices

bool StochasticMatrix::rows_sum_to_one() const {
  return std::all_of(p.begin(), p.end(), [](const auto& row) {
    Rational sum = 0;
    for (const auto& x : row) sum += x;
    return sum == 1;
  });
}

std::vector<Rational> StochasticMatrix::apply(const std::vector<Rational>& distribution) const {
  if (distribution.size() != size()) throw Error("distribution size does not match matrix");
  std::vector<Rational> out(size(), Rational(0));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out[j] += distribution[i] * p[i][j];
  return out;
}

bool StochasticMatrix::is_stationary(const std::vector<Rational>& distribution) const {
  return apply(distribution) == distribution;
}

std::vector<Rational> StochasticMatrix::stationary() const {
  const auto k = size();
  // Rows j < k-1: sum_i pi_i (P_ij - [i == j]) = 0. Last row: sum_i pi_i = 1.
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1, Rational(0)));
  for (std::size_t j = 0; j + 1 < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) a[j][i] = p[i][j] - (i == j ? 1 : 0);
  }
  for (std::size_t i = 0; i < k; ++i) a[k - 1][i] = 1;
  a[k - 1][k] = 1;

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && a[pivot][col] == 0) ++pivot;
    if (pivot == k) throw Error("stationary distribution is not unique");
    std::swap(a[col], a[pivot]);
    for (std::size_t row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[row][c] -= factor * a[col][c];
    }
  }
  std::vector<Rational> pi(k);
  for (std::size_t i = 0; i < k; ++i) pi[i] = a[i][k] / a[i][i];
  return pi;
}

StochasticMatrix growth_transition_matrix(GrowthModel model) {
  const Rational third(1, 3);
  if (model == GrowthModel::AutomatonI) {
    return {{"live", "dead"}, {{third, 2 * third}, {2 * third, third}}};
  }
  return {{"both-ends-0", "one-end-0", "no-end-0"},
          {{third, 2 * third, Rational(0)},
           {Rational(1, 6), Rational(1, 2), third},
           {Rational(0), third, 2 * third}}};
}

std::vector<Rational> stated_stationary(GrowthModel model) {
  if (model == GrowthModel::AutomatonI) return {Rational(1, 2), Rational(1, 2)};
  return {Rational(1, 9), Rational(4, 9), Rational(4, 9)};
}

EndClass end_class(const Filament& filament) {
  const int zeros = (filament[0] == 0 ? 1 : 0) + (filament[filament.size() - 1] == 0 ? 1 : 0);
  // A single cell that is 0 sits at both ends.
  if (filament.size() == 1) return filament[0] == 0 ? EndClass::BothEndsZero : EndClass::NoEndZero;
  if (zeros == 2) return EndClass::BothEndsZero;
  if (zeros == 1) return EndClass::OneEndZero;
  return EndClass::NoEndZero;
}

StochasticMatrix empirical_growth_matrix(std::size_t n, int num_states, std::vector<std::string> labels,
                                         const std::function<std::size_t(const Filament&)>& classify) {
  const auto k = labels.size();
  std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(k, 0));
  const auto total = enumeration_size(num_states, n, 100'000'000);
  for (std::uint64_t index = 0; index < total; ++index) {
    const auto f = filament_from_index(index, n, num_states);
    const auto from = classify(f);
    for (int c = 0; c < num_states; ++c) {
      ++counts.at(from).at(classify(f.appended(static_cast<CellState>(c))));
    }
  }
  StochasticMatrix m{std::move(labels), std::vector<std::vector<Rational>>(k, std::vector<Rational>(k, Rational(0)))};
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t row_total = 0;
    for (auto x : counts[i]) row_total += x;
    if (row_total == 0) continue;
    for (std::size_t j = 0; j < k; ++j) m.p[i][j] = Rational(counts[i][j], row_total);
  }
  return m;
}

}  // namespace filament
