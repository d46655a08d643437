#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mocsfs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks behind `mocsfs verify`: the selection and indicator routines
/// against brute-force references (pairwise peeling, Monte-Carlo area),
/// the documented worked examples, and masked-distance equivalence.
/// `on_result` is invoked after each check completes.
std::vector<CheckResult> run_verification(
    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace mocsfs
