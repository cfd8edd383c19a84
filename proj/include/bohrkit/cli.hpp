#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bohrkit::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kNumerical = 3,
  kOutput = 4,
  kAssertion = 5,
};

/// Runs the command line `args` (without the program name), writing records to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated reals, e.g. "0,0.1,0.25".
std::vector<double> parse_grid(const std::string& text);

/// "%.17g" formatting used for every CSV number.
std::string format_number(double x);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);

}  // namespace bohrkit::cli
