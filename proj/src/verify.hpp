#pragma once

#include "counting.hpp"

#include <string>
#include <vector>

namespace hc {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  bool fast = false;        // skip the Monte Carlo end-to-end run and X >= 40 counts
  uint64_t seed = 1;        // drives every randomized input deterministically
  long mc_samples = 10000000;
};

// suites: "all", "identities", "counts", "lattices"
std::vector<CheckResult> run_verification(const std::string& suite, const VerifyOptions& opt);

std::string format_report(const std::vector<CheckResult>& results);

}  // namespace hc
