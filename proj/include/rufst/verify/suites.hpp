#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rufst::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool strict = false;  // pass iff value < threshold (otherwise value <= threshold)
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // subset of {core, frame, finite, scattering}; empty = all
  std::string break_check;          // sabotage the named check (negative controls)
};

/// Runs the invariant suites and returns one result per check. Deterministic
/// for a fixed seed.
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

std::string format_check_line(const CheckResult& r);

/// Every check name known to run_verify, for exercising negative controls.
std::vector<std::string> all_check_names();

}  // namespace rufst::verify
