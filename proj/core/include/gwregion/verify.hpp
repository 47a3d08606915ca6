#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Self-check suite: every closed form against identities, constructions,
// random sampling and the brute-force oracles.
namespace gwregion::verify {

struct SuiteOptions {
  /// Reduced grids, sample counts and restarts.
  bool quick = false;
  std::uint64_t seed = 7;
  int threads = 1;
  /// Negative control: perturbs a source constant inside the identity check.
  bool inject_fault = false;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  double max_dev = 0.0;
  double tol = 0.0;
  bool passed = false;
  /// Wall time of the check. Not part of the deterministic report.
  double seconds = 0.0;
};

/// Criteria are numbered 1..8. Each returns one or more checks.
std::vector<CheckResult> run_criterion(int criterion, const SuiteOptions& options);

inline constexpr int kCriteria = 8;

/// Runs all criteria in order; `on_result` is called after each check completes.
std::vector<CheckResult> run_suite(const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result = {});

/// One line per check. Timings are appended only when `with_timings` is set.
std::string format_line(const CheckResult& r, bool with_timings = false);
std::string format_report(const std::vector<CheckResult>& results, bool with_timings = false);

}  // namespace gwregion::verify
