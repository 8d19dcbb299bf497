#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satlab::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kPrecondition = 3,
  kContract = 4,
};

/// Runs one command line (without the program name). Results go to `out`, or
/// to the file named by --out when given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satlab::cli
