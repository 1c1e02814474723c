#pragma once

#include <string>
#include <vector>

namespace tgm::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means no limit
};

CriterionResult check_homogeneous_exactness();
CriterionResult check_stability_contrast();
CriterionResult check_convergence_orders();
CriterionResult check_engine_equivalence();
CriterionResult check_exact_solutions();
CriterionResult check_snapshot_reproduction();
CriterionResult check_green_functions();
CriterionResult check_reality_preservation();

/// All criteria in order.
std::vector<CriterionResult> run_acceptance();

/// "[PASS] 1 name (0.12 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace tgm::verify
