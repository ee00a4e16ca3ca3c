#pragma once

#include <stdexcept>
#include <string>

namespace aopc {

/// Malformed or out-of-range input handed to a public operation.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold (e.g. a cyclic
/// arc set passed where a DAG is required).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical or internal failure inside the LP engine or the search.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance outside the supported envelope (separation > 3, enumeration caps).
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace aopc
