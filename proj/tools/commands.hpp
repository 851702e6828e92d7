#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rabi::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidConfig = 2, kNumericalFailure = 3 };

/// Half-open grid lo, lo + step, ... below hi. lo == hi is empty; lo > hi is rejected.
struct Range {
  double lo = 0.0, hi = 0.0, step = 0.0;
  std::vector<double> points() const;
};

/// Parses "lo:hi:step"; "lo:hi" takes default_step. Throws std::invalid_argument.
Range parse_range(const std::string& text, double default_step);

/// %.17g, with "nan" for NaN.
std::string format_number(double v);

/// Runs one subcommand. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rabi::cli
