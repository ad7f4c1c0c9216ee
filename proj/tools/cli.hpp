#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace srg::cli {

/// Exit codes.
constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kParseError = 2;
constexpr int kNumericError = 3;

/// Runs `srg [region|gains] ...`. Artifacts go to files or to `out`;
/// reports and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srg::cli
