#ifndef WSMAN_TOOLS_CLI_HPP
#define WSMAN_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wsman::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kInfeasible = 3,
  kRetryExhausted = 4,
  kInconsistent = 5,
};

/// Runs one command. `args` excludes the program name; `-` as a path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wsman::cli

#endif  // WSMAN_TOOLS_CLI_HPP
