#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace majo {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Description of the first failing case, empty when none failed.
  std::string first_failure;
};

/// Runs the randomized invariant suites behind `majo selftest`. The seed
/// fixes every draw, so two runs with the same arguments report identically.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t iterations = 200);

}  // namespace majo
