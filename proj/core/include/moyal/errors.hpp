#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moyal {

// Base class for all engine errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact division by i*hbar requested on a term with no hbar factor.
class NotDivisibleError : public Error {
 public:
  explicit NotDivisibleError(const std::string& what) : Error(what) {}
};

// An exact flow was requested but the iterated bracket did not vanish
// within the iteration cap.
class NonTerminatingError : public Error {
 public:
  NonTerminatingError(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_ = 0;
};

// Matrix with determinant != 1 passed where a symplectic map is required.
class NotSymplecticError : public Error {
 public:
  explicit NotSymplecticError(const std::string& what) : Error(what) {}
};

// Expression text rejected by the grammar; position is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Negative, non-integer or oversized exponent.
class ExponentError : public ParseError {
 public:
  using ParseError::ParseError;
};

// '/' applied to anything but an integer literal.
class DivisionError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Malformed JSON or JSON not matching the published polynomial schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

// Verification suite name not recognised.
class UnknownSuiteError : public Error {
 public:
  explicit UnknownSuiteError(const std::string& name)
      : Error("unknown verification suite: " + name) {}
};

}  // namespace moyal
