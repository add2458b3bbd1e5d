#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anhom {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument does not hold.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DisjointnessError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Outcome index outside 1..n.
class IndexError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// The request exceeds what an exhaustive scan can enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NotAdditiveError : public Error {
 public:
  using Error::Error;
};

class NotMultiplicativeError : public Error {
 public:
  using Error::Error;
};

/// The zero function (or another excluded constant) was passed where a
/// nontrivial truth function is required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ZeroFunctionError : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

/// Projections that do not commute were passed to an operation that needs
/// PQ = QP.
class NonCommutingError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based; zero means
/// unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace anhom
