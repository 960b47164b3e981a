#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace braidscape::cli {

/// Deterministic run envelope written with every command's output.
struct RunReport {
  std::string command;
  std::string input_hash;
  std::uint64_t max_cells = 0;
};

/// Dispatches one subcommand; returns the process exit code
/// (0 success, 2 NotApplicable, 1 error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace braidscape::cli
