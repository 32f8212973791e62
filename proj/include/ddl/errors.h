#ifndef DDL_ERRORS_H_
#define DDL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or resolution failure in a knowledge-base file. Line and column are
// 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// The universal axioms rule out every cell.
class InconsistentAxioms : public Error {
 public:
  using Error::Error;
};

// A proportion or entailment was requested relative to a world state with no
// models.
class EmptyCondition : public Error {
 public:
  using Error::Error;
};

// An enumeration (region vectors, evidence sets, oracle models) would exceed
// its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ddl

#endif  // DDL_ERRORS_H_
