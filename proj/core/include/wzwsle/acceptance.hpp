#ifndef WZWSLE_ACCEPTANCE_HPP
#define WZWSLE_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wzwsle {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  /// Monte Carlo path count for the statistical criteria.
  long mc_paths = 100000;
  /// Worker threads for the Monte Carlo runs (0 = hardware).
  int threads = 0;
  /// Step size of the deterministic discretization control.
  double control_dt = 3e-10;
};

/// Runs every acceptance criterion, printing one PASS/FAIL line per
/// criterion to `out` as it completes.
std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const AcceptanceOptions& opt = {});

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace wzwsle

#endif
