#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace baerlab {

// Error taxonomy mirrors the CLI exit codes: parse (2), bounds/caps (3),
// internal consistency (4).

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signals a bug in the engine, never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace baerlab
