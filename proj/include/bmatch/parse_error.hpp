#pragma once

#include <stdexcept>
#include <string>

namespace bmatch {

// Parse failure in a text input, tagged with the 1-based line number.
struct ParseError : std::runtime_error {
  long long line;
  ParseError(long long line_, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_) + ": " + message),
        line(line_) {}
};

}  // namespace bmatch
