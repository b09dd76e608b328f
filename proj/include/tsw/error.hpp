#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsw {

// Base of every error the workbench raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An operation was called with arguments outside its contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An exponential operation would exceed its configured variable cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A result contradicted a theorem the code relies on. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace tsw
