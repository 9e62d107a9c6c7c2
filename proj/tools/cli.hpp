#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bruhat::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kRefuted = 1,
  kBadInput = 2,  // infeasible margins, parity, parse failures, mixed classes
  kBudget = 3,
  kHypothesis = 4,
};

// Runs the tool with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bruhat::cli
