#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace realexp::cli {

inline constexpr const char* kEngineVersion = "realexp 0.1.0";

/// Runs one command line (without the program name).  Results go to `out`,
/// diagnostics and error JSON to `err`.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realexp::cli
