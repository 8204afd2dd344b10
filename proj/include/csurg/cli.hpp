#pragma once

#include "csurg/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace csurg {

/// Exit statuses: 0 success, 1 a verification suite failed, 2 usage,
/// then one per error category.
int exit_status(ErrorCategory category);
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csurg
