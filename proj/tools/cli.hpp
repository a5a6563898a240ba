#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace apsq::cli {

// Runs one CLI invocation. stdout carries data, stderr diagnostics.
// Exit codes: 0 ok, 2 usage, 3 invariant violation / domain error,
// 4 resource limit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apsq::cli
