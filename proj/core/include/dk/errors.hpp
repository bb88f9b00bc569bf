#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dk {

// Malformed edge-list or distribution input. Line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The requested operation is not supported for this input (e.g. 3K -> 2K
// projection without the host graph).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A constructive generator gave up (matching deadlocks exhausted its retries).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dk
