#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace perp {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;
};

struct VerifyOptions {
  // test hook: overrides the RegVar(2) limit constant to exercise the
  // failure path; NaN means "use the real one"
  double broken_regvar_constant = std::nan("");
  long long sampler_draws = 1000000;
};

// Cross-module invariant suites behind the CLI `verify` subcommand.
std::vector<SuiteResult> run_verification(const VerifyOptions& opt = {});

bool all_passed(const std::vector<SuiteResult>& suites);

}  // namespace perp
