#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcm::cli {

/// Exit codes: 0 success, 1 comparison gate failed, 2 configuration error.
enum ExitCode : int { kOk = 0, kGateFailed = 1, kConfigError = 2 };

/// Runs the command line (args excludes the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest-safe decimal with 17 significant digits, '.' separator, "nan"/"inf".
std::string format_double(double v);

}  // namespace gcm::cli
