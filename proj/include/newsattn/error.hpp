#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace newsattn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a file, row, or field that cannot be interpreted.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input whose content violates a data contract.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument or configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Collects recoverable problems (skipped rows, dropped records) so callers
/// can report them without aborting a whole file.
struct Diagnostics {
  std::vector<std::string> warnings;
  std::size_t skipped = 0;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  void skip(std::string message) {
    ++skipped;
    warnings.push_back(std::move(message));
  }
};

}  // namespace newsattn
