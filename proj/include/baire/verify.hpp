#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace baire {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string counterexample;  // first failure, empty on success
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// ordinal, seqspace, clopen, hierarchy, rank, game, universal, embed, io.
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite for "all". Throws std::invalid_argument for
// an unknown name. Reports depend only on (name, seed).
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed);

// Plain text, one line per check.
std::string format_report(const std::vector<SuiteReport>& reports, std::uint64_t seed);

}  // namespace baire
