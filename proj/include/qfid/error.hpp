#pragma once

#include <stdexcept>
#include <string>

namespace qfid {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, reducible minimal polynomial, mixed number fields.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a model, formula or scalar expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Model rejected by completeness or shape checks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The comparison polynomial kept an imaginary part; the matrix is not an S2M image.
class EncodingError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfid
