#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ink {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (KB files, formulas, DIMACS, configs).
class ParseError : public Error {
 public:
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A solver or measure ran out of its configured decision budget. Distinct
/// from SAT/UNSAT: the answer is indeterminate, never a boolean.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// random_model was asked for a model of an unsatisfiable formula.
class UnsatFormulaError : public Error {
 public:
  using Error::Error;
};

/// A hitting-set construction met a contradictory (unsatisfiable) formula.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

/// The eta measure refuses signatures beyond its configured cap.
class SignatureTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments, broken invariants, invalid configuration values.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace ink
