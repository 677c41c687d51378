#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kvol {

struct VerifyResult {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  int failures = 0;
  std::string first_failure;  // empty when all trials pass

  bool ok() const { return failures == 0; }
};

/// Randomized property suites behind `verify`: pythagorean (exact Theorem
/// residual), functoriality (compound of a product), adjoint (compound of a
/// transpose), multiplicativity (content of a composition), degua.
/// Deterministic for a given seed. Throws std::invalid_argument for an
/// unknown suite name.
VerifyResult run_suite(const std::string& suite, int trials,
                       std::uint64_t seed);

std::vector<std::string> suite_names();

}  // namespace kvol
