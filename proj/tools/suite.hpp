#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace reltutte::cli {

struct SuiteConfig {
  std::uint64_t seed = 1;
  unsigned trials = 32;
  int instances = 20;
  unsigned jobs = 1;
  /// Swap T_slash and T_minus before building the tensor right-hand side.
  bool inject_fault = false;
};

struct SuiteOutcome {
  std::string name;
  int passed = 0;
  int failed = 0;
  /// Report for the first failing instance, including its graph files.
  std::string first_counterexample;
};

/// Runs every property suite; instance i of each suite draws from its own
/// stream seeded from (seed, suite, i), so results do not depend on `jobs`.
std::vector<SuiteOutcome> run_suites(const SuiteConfig& cfg);

void print_text(std::ostream& out, const SuiteConfig& cfg, const std::vector<SuiteOutcome>& outcomes);
void print_jsonl(std::ostream& out, const SuiteConfig& cfg, const std::vector<SuiteOutcome>& outcomes);

}  // namespace reltutte::cli
