#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghpath {

// Runs the command-line interface on `args` (program name excluded) writing
// reports to `out` and diagnostics to `err`. Returns the process exit code:
//   0 success, 2 invalid input, 3 precondition violated,
//   4 verification failed, 5 search budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghpath
