#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "filament/core.hpp"
#include "filament/engine.hpp"

namespace filament::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIncomplete = 2,  // unresolved trajectory, census or truncated search
  kInternal = 3,
};

// Malformed arguments; reported with exit code kUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A catalogue name or a path to a rule file.
Rule resolve_rule(const std::string& source);

/// Initial-state language:
///   0222, 0,2,2,2, [0,2,2,2]     explicit states
///   [0 2^{n-1}], 0^{n-1} 1       runs; exponents are integers, n, or n-k
///   uniform:<d>                  n copies of d
///   random:<seed>                n states uniform over the rule's states
///   zeros-then-ones              floor(n/2) zeros then ones
/// `length` supplies n and is required whenever a pattern mentions it.
Filament parse_initial(std::string_view spec, std::optional<std::size_t> length, int num_states);

enum class RenderFormat { Ascii, Pgm };

// 0 black, 1 white, 2 grey; other states spread over the remaining grey levels.
int pixel_of(CellState state, int num_states);

// One row of digits per step.
void render_ascii(std::ostream& out, const Trace& trace);
// Plain (P2) PGM, one row per step, each cell a scale x scale block.
void render_pgm(std::ostream& out, const Trace& trace, int num_states, std::size_t scale = 1);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace filament::cli
