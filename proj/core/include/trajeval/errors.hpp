#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trajeval {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values (non-positive thresholds, malformed specs, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyTrajectoryError : public Error {
 public:
  using Error::Error;
};

class NoOverlapError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

// No (i, i + delta) couple fits inside the trajectory.
class EmptyWindowError : public Error {
 public:
  using Error::Error;
};

}  // namespace trajeval
