#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghostcheck {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic summary, or the first failure
  double seconds = 0;
  double budget = 0;
};

/// Runs acceptance criteria 1-9 in order. A criterion passes only if every
/// check holds and it finishes within its time budget.
std::vector<CriterionResult> run_acceptance(unsigned threads = 1);

/// One line per criterion: "[PASS] C5 residue formula: ...". Timings are
/// appended only when with_timing is set, so the default is byte-stable.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, bool with_timing);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ghostcheck
