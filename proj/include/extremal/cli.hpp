#ifndef EXTREMAL_CLI_HPP
#define EXTREMAL_CLI_HPP

#include "extremal/full_branch_map.hpp"
#include "extremal/events.hpp"
#include "extremal/rational.hpp"
#include "extremal/table.hpp"

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace extremal::cli {

enum ExitCode : int {
  kSuccess = 0,
  kViolation = 1,
  kUsage = 2,
  kBudget = 3,
};

/// Runs the command line (argv[0] is the program name). Tables go to the
/// output directory and to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CheckOptions {
  Rational zeta = Rational(1, 3);
  std::size_t q = 2;
  std::vector<std::size_t> ns;  // Д'_q grid; empty skips the sums
  DprimeRange range = DprimeRange::beyond_q;
  std::size_t configs = 50;     // randomized domination instances
  std::size_t max_n = 12;
  std::size_t max_q = 3;
  std::uint64_t seed = 0;
  /// Testing hook: corrupts one right-hand side so that a violation shows.
  bool inject_fault = false;
};

struct CheckResult {
  Table table;
  bool violated = false;
};

/// ⌈n^{1/4}⌉ computed exactly.
std::size_t quartic_root_ceil(std::size_t n);

/// Exact Д'_q sums along opts.ns (must strictly decrease) and the annuli
/// domination LHS ≤ RHS on random small instances.
CheckResult run_check(const FullBranchMap& map, const CheckOptions& opts);

} // namespace extremal::cli

#endif
