#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bipres {

/// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem or stream failure.
struct IoError : Error {
  using Error::Error;
};

/// Malformed input data. `line` is 1-based when the offending source is a
/// text document, -1 otherwise.
struct ValidationError : Error {
  explicit ValidationError(const std::string& message, std::int64_t line_number = -1)
      : Error(line_number > 0 ? message + " (line " + std::to_string(line_number) + ")"
                              : message),
        line(line_number) {}

  std::int64_t line = -1;
};

/// A violated internal invariant: either a bug or inconsistent inputs.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace bipres
