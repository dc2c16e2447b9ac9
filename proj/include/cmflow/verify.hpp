// verify.hpp — the randomized property suites behind `verify <suite>`
//
// Each suite runs a fixed battery of residual and bound checks, seeded so a
// rerun reproduces the same draws, and returns the measured values next to
// the tolerances instead of bare booleans.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmflow {

struct CheckResult {
  std::string name;
  double measured;
  // The check passes when low <= measured <= high; one-sided checks leave
  // the unused side at an infinity.
  double low;
  double high;
  bool passed;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Suites: covariance, conservation, monotonicity, kazdan_warner,
// inequalities, sl2, area_ode, decay. Unknown names throw
// std::invalid_argument.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed);

const std::vector<std::string>& suite_names();

}  // namespace cmflow
