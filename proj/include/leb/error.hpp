#pragma once

#include <stdexcept>
#include <string>

namespace leb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An application whose argument type does not match the function's domain.
struct IllTyped : Error {
  explicit IllTyped(const std::string& where) : Error("ill-typed term: " + where) {}
};

struct ParseError : Error {
  using Error::Error;
};

// A reduction-step or mu-search budget ran out before the result was certain.
struct BudgetExhausted : Error {
  using Error::Error;
};

struct UnassignedVariable : Error {
  explicit UnassignedVariable(const std::string& name)
      : Error("unassigned free variable: " + name) {}
};

struct UnsupportedConstant : Error {
  explicit UnsupportedConstant(const std::string& what)
      : Error("unsupported constant here: " + what) {}
};

struct UnsupportedTerm : Error {
  using Error::Error;
};

struct TypeMismatch : Error {
  using Error::Error;
};

struct DanglingFreeVariable : Error {
  explicit DanglingFreeVariable(const std::string& name)
      : Error("replacement introduces free variable: " + name) {}
};

struct NonArithmetical : Error {
  using Error::Error;
};

struct NonEliminable : Error {
  using Error::Error;
};

}  // namespace leb
