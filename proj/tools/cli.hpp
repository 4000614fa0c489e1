#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsm::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Runs the `dsm` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsm::cli
