#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qamc/branch.hpp"

namespace qamc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputParse = 2,
  kExitConfig = 3,
  kExitNumerical = 4,
  kExitVerification = 5,
};

/// Malformed sample input; `line()` is 1-based.
class InputParseError : public std::runtime_error {
 public:
  InputParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One decimal real per line; blank lines and text after '#' are ignored.
/// Throws InputParseError for a malformed line or when no sample is found.
std::vector<double> parse_samples(std::istream& in);

/// "RE,IM" -> RE + IM i. Throws ConfigError.
Complex parse_alpha(std::string_view text);

/// Entry point behind the `qamc` executable. Reports go to --out or `out`;
/// diagnostics to `err`. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qamc::cli
