#pragma once

#include <string>

#include "leb/term.hpp"

namespace leb {

// Term grammar (whitespace-insensitive):
//   type  ::= "0" | "(" type "->" type ")"
//   term  ::= ident | "0" | "S" | "Pi" | "Sigma" | "R0" | "Cond" | "Mu"
//           | "Leb" | "Eps" | "(" term term+ ")" | "(lam ident ":" type "." term)
// plus two conveniences: decimal numerals stand for Succ towers, and
// Pi/Sigma/Cond accept explicit type parameters as Pi[r,s] etc. Without
// them the parameters are inferred by unification; parameters nothing
// constrains default to the ground type. Surface lambdas compile to
// Pi/Sigma combinators. The "." after the binder type is optional.
Term parse_term(const std::string& src);

// As parse_term, with the types of the given free variables fixed up front
// (used by the formula parser for quantified variables).
Term parse_term(const std::string& src, const std::map<std::string, Type>& var_types);

Type parse_type_string(const std::string& src);

}  // namespace leb
