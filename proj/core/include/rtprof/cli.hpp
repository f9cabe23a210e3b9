#pragma once

#include <string>
#include <vector>

namespace rtprof::cli {

// Runs one subcommand. Every run writes a manifest (command, argv, config,
// budgets, elapsed) beside its primary output. Exit codes: 0 success,
// 2 validation/usage error, 3 budget error (manifest still written).
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace rtprof::cli
