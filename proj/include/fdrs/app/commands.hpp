#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdrs::app {

enum ExitCode : int { kOk = 0, kUsageError = 1, kCertificateFailure = 2 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdrs::app
