#pragma once

#include <string>
#include <vector>

namespace olens {

// Parses and runs one subcommand (args exclude the program name).
// Exit codes: 0 success, 2 usage, 3 missing input/artifact, 4 stale
// artifact, 5 parse error, 1 anything else.
int run_cli(const std::vector<std::string>& args);

}  // namespace olens
