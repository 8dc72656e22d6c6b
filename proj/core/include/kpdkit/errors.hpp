#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kpdkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (bad index, shape mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 means "end of input".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An alternating update needed to divide by the norm of a zero factor.
class DegenerateFactor : public Error {
 public:
  explicit DegenerateFactor(std::size_t axis);
  std::size_t axis() const noexcept { return axis_; }

 private:
  std::size_t axis_;
};

/// The solver kept collapsing to the zero product after every resample.
class ZeroStationaryPoint : public Error {
 public:
  using Error::Error;
};

}  // namespace kpdkit
