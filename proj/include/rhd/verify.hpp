#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rhd {

/// Outcome of one theorem-level property check.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Multiplier on the per-check sample counts (1.0 = the full battery).
  double sample_scale = 1.0;
  int threads = 0;
};

/// Runs the full property battery of every module and returns one result
/// per theorem-level check.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

/// Prints one pass/fail line per check; returns true iff all passed.
bool print_verification(const std::vector<CheckResult>& results,
                        std::ostream& out);

}  // namespace rhd
