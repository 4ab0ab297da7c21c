#pragma once

#include <map>
#include <memory>
#include <string>

#include "leb/eval.hpp"
#include "leb/term.hpp"

namespace leb {

// First-order formulas over the term language: prime formulas t = t' at type
// 0, the connectives, and typed quantifiers. Immutable, shared.
class Formula {
 public:
  enum class Tag { Prime, Not, And, Or, Implies, Forall, Exists };

  Formula();  // 0 = 0
  static Formula prime(Term lhs, Term rhs);
  static Formula lnot(Formula a);
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Type t, Formula body);
  static Formula exists(std::string var, Type t, Formula body);

  Tag tag() const { return node_->tag; }
  bool is_prime() const { return node_->tag == Tag::Prime; }
  bool is_quantifier() const { return node_->tag == Tag::Forall || node_->tag == Tag::Exists; }
  const Term& lhs() const;
  const Term& rhs() const;
  Formula left() const;   // Not/And/Or/Implies; quantifier body
  Formula right() const;  // And/Or/Implies
  const std::string& qvar() const;
  const Type& qtype() const;

  bool is_quantifier_free() const;
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Free term variables (minus bound ones).
  std::map<std::string, Type> free_vars() const;
  // Capture-avoiding substitution of a term for a free variable.
  Formula subst_term(const std::string& name, const Term& replacement) const;

  std::string to_string() const;

 private:
  struct Node {
    Tag tag;
    Term l, r;         // Prime
    std::shared_ptr<const Node> a, b;
    std::string var;   // quantifier
    Type var_type;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula wrap(std::shared_ptr<const Node> n) { return Formula(std::move(n)); }
  std::shared_ptr<const Node> node_;
};

// Syntax: prime "t = t", "~A", "A & B", "A | B", "A -> B" (right assoc,
// lowest), "forall x:type. A", "exists x:type. A" (scope to the right).
// Precedence: ~ > & > | > ->.
Formula parse_formula(const std::string& src);

struct FormulaEval {
  bool value = false;
  // false when a bounded quantifier enumeration decided the value
  bool exact = true;
  bool incomplete = false;  // some inner mu search was cut off
};

// Test-oriented evaluation: type-0 quantifiers are enumerated up to
// quant_bound (marking the result inexact), higher-type quantifiers are
// rejected.
FormulaEval eval_formula(const Formula& f, const Env& env = {}, const EvalLimits& lim = {},
                         uint64_t quant_bound = 64, const GInterp* g_interp = nullptr);

}  // namespace leb
