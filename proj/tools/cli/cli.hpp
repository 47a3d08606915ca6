#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gwregion/surface.hpp"
#include "gwregion/verify.hpp"

namespace gwregion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `gwregion` tool. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One JSON record (single line) for a point evaluation.
std::string eval_json(const surface::Query& query, const surface::EnvelopeSample& sample);

/// Full CSV document for a grid sweep, LF line endings.
std::string surface_csv(const surface::Query& query, int steps);

struct VerifyArgs {
  bool quick = false;
  std::uint64_t seed = 7;
  int threads = 1;
  bool timings = false;
  bool inject_fault = false;
  /// Criteria to run; empty means all.
  std::vector<int> only;
};

/// Runs the check suite, streaming one line per check to `out`. The collected
/// results are stored in `results` when given. Returns kExitOk iff all checks pass.
int cmd_verify(const VerifyArgs& args, std::ostream& out,
               std::vector<verify::CheckResult>* results = nullptr);

}  // namespace gwregion::cli
