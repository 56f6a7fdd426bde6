// Re-derives the completion entries of the radius-2 bouncer and prints them
// in rule-file syntax, with the convergence tally as comments.

#include <cstdlib>
#include <iostream>
#include <string>

#include "filament/search.hpp"

namespace {

std::string pattern(const filament::RuleEntry& e) {
  std::string s;
  for (const auto& t : e.left) s += t.to_char();
  s += ' ';
  for (const auto& t : e.right) s += t.to_char();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  filament::CompletionOptions options;
  if (argc > 1) options.converge_max_n = std::strtoul(argv[1], nullptr, 10);
  try {
    const auto result = filament::derive_bouncer_completion(options);
    std::cout << "# locked cells: " << result.locked_cells << '\n'
              << "# free cells: " << result.free_cells << '\n'
              << "# converging: " << result.converging << " / " << result.total << " (n = "
              << options.converge_min_n << ".." << options.converge_max_n << ")\n";
    for (const auto& f : result.non_converging) std::cout << "# stuck: " << f.to_string() << '\n';
    for (const auto& e : result.entries) {
      std::cout << static_cast<int>(e.current) << " | " << pattern(e) << " -> " << static_cast<int>(e.next) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
