#pragma once
// End-to-end verification suite. Criteria 1-8 check sampling moments,
// analytic self-consistency, and each generative scenario against its target
// law at fixed seeds; criterion 9 reruns the whole suite, byte-compares the
// rendered reports, and checks the simulators bitwise across worker counts.

#include <string>
#include <vector>

namespace hs::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;       // deterministic; no timings
  double seconds = 0.0;     // wall time, informational
  double budget_seconds = 0.0;  // 0 = no budget
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return true;
  }
};

// Criteria 1-8.
SuiteResult run_suite(unsigned threads);

// Criteria 1-8 twice at `threads` plus the worker-count invariance checks,
// with the results appended as criterion 9.
SuiteResult run_all(unsigned threads);

// Deterministic report: one line per criterion plus an overall line. No
// timings, so identical runs render identical bytes.
std::string render_report(const SuiteResult& suite);

}  // namespace hs::acceptance
