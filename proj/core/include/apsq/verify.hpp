#pragma once

// The reproduction suite: every headline quantity is recomputed from
// scratch and compared against its expected value at zero tolerance.
// The CLI's verify-paper subcommand and the acceptance test binary both
// drive this list.

#include <string>
#include <vector>

namespace apsq {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;  // what was computed, or what went wrong
};

std::vector<CriterionResult> run_acceptance();

}  // namespace apsq
