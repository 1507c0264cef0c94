#pragma once

#include <string>
#include <vector>

namespace fieldrank::cli {

/// Parses and runs one command. Exit codes: 0 success, 1 runtime error
/// (no partial output files are left behind), 2 usage error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace fieldrank::cli
