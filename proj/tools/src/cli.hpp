#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scholz::cli {

inline constexpr int schema_version = 1;
inline constexpr const char* budget_env = "SCHOLZ_SCAN_BUDGET";

/// Runs one command line.  Exit codes: 0 ok, 1 violations or failures, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace scholz::cli
