#pragma once

#include <stdexcept>
#include <string>

namespace slog {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntax error with a 1-based source location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// An argument was unbound where a bound term is required.
class InstantiationError : public Error {
 public:
  explicit InstantiationError(const std::string& what) : Error("instantiation error: " + what) {}
};

class TypeError : public Error {
 public:
  explicit TypeError(const std::string& what) : Error("type error: " + what) {}
};

/// Arithmetic failure such as division by zero or overflow.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what) : Error("evaluation error: " + what) {}
};

/// Call to a predicate that has no clauses and is not declared.
class ExistenceError : public Error {
 public:
  explicit ExistenceError(const std::string& indicator)
      : Error("existence error: unknown procedure " + indicator), indicator_(indicator) {}
  const std::string& indicator() const { return indicator_; }

 private:
  std::string indicator_;
};

/// A program or theory violates a structural requirement (non-definite
/// clause, cut under a non-depth-first strategy, unstratified theory, ...).
class ProgramError : public Error {
 public:
  explicit ProgramError(const std::string& what) : Error(what) {}
};

/// Raised inside nested evaluation (negation, collection predicates) when
/// engine limits are hit; surfaces as the resources-exhausted marker.
class ResourceError : public Error {
 public:
  ResourceError() : Error("resources exhausted") {}
};

}  // namespace slog
