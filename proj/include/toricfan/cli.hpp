// JSON fan and divisor files and the `toricfan` command dispatcher.
//
// Exit codes: 0 the command ran and the property holds (or data was
// produced), 1 it ran and the property fails, 2 input error, 3 internal
// invariant violation.
#pragma once

#include "toricfan/divisor.hpp"
#include "toricfan/fan.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace toricfan::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2, kInvariantViolation = 3 };

/// Malformed file contents; the message names the offending location.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// {"dim": n, "rays": [[...], ...], "max_cones": [[i, ...], ...], "labels": [...]}.
/// Entries may be JSON integers or decimal strings. Non-primitive rays are
/// divided by their content and reported in `warnings`; zero or duplicate rays
/// are rejected. Fan validation errors propagate unchanged.
Fan parse_fan_file(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// {"coefficients": [a_0, ...]} aligned with the fan's ray order.
ToricDivisor parse_divisor_file(const std::string& text, const Fan& f);

std::string emit_fan_file(const Fan& f);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricfan::cli
