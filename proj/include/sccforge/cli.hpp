#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sccforge::cli {

// Process exit statuses.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;  // a --check cross-validation failed
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;
inline constexpr int exit_not_converged = 4;

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sccforge::cli
