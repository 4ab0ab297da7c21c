#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leb/error.hpp"
#include "leb/types.hpp"

namespace leb {

// The constant alphabet of the kernel calculus.
//   Zero : 0                    Succ : 0->0
//   Pi(r,s) : r->s->r           Sigma(r,s,t) : (r->s->t)->(r->s)->r->t
//   Rec0 : 0->0->(0->0->0)->0   Cond(r) : 0->r->r->r
//   Mu : (0->0)->0              Leb, Eps : ((0->0)->0)->(0->0)
enum class ConstKind { Zero, Succ, Pi, Sigma, Rec0, Cond, Mu, Leb, Eps };

const char* const_kind_name(ConstKind k);
int const_type_param_count(ConstKind k);
Type const_type(ConstKind k, const std::vector<Type>& params);

// Path into a term tree: 0 descends into the function, 1 into the argument.
using Path = std::vector<uint8_t>;

// A typed combinator term. Nodes are variables, constants, or applications.
// Immutable and cheaply shareable; the type of every node is cached at
// construction. Term::app checks the application and throws IllTyped.
class Term {
 public:
  enum class Tag { Var, Const, App };

  Term();  // the constant 0
  static Term var(std::string name, Type type);
  static Term constant(ConstKind k, std::vector<Type> params = {});
  static Term app(Term fun, Term arg);            // checked
  static Term app_unchecked(Term fun, Term arg);  // for tests and raw builders

  Tag tag() const { return node_->tag; }
  bool is_var() const { return node_->tag == Tag::Var; }
  bool is_const() const { return node_->tag == Tag::Const; }
  bool is_const(ConstKind k) const { return is_const() && node_->kind == k; }
  bool is_app() const { return node_->tag == Tag::App; }

  const std::string& var_name() const;
  ConstKind const_kind() const;
  const std::vector<Type>& type_params() const;
  Term fun() const;
  Term arg() const;

  const Type& type() const { return node_->type; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  size_t hash() const { return node_->hash; }

  // Spine view: peels h a1 a2 ... an into (h, [a1..an]).
  std::pair<Term, std::vector<Term>> spine() const;
  static Term apply_spine(Term head, const std::vector<Term>& args);

  // Free variables with their types.
  std::map<std::string, Type> free_vars() const;
  bool mentions_var(const std::string& name) const;
  bool mentions_const(ConstKind k) const;
  size_t size() const;

  // Fragment checks: T0 avoids Mu, Leb, Eps; T0[mu] avoids Leb, Eps.
  bool in_t0() const { return !mentions_const(ConstKind::Mu) && in_t0_mu(); }
  bool in_t0_mu() const {
    return !mentions_const(ConstKind::Leb) && !mentions_const(ConstKind::Eps);
  }

  // Capture is impossible (no binders), so substitution is plain replacement.
  Term subst(const std::string& name, const Term& replacement) const;

  std::optional<Term> at_path(const Path& p) const;
  Term replace_at(const Path& p, const Term& replacement) const;

  // Iterated Succ of Zero.
  static Term numeral(uint64_t n);
  // If the term is a numeral, its value.
  std::optional<uint64_t> as_numeral() const;

  // Canonical textual form (re-parseable; numerals printed as decimals,
  // Pi/Sigma/Cond carry explicit [..] type parameters).
  std::string to_string() const;

 private:
  struct Node {
    Tag tag;
    Type type;
    size_t hash;
    // Var
    std::string name;
    // Const
    ConstKind kind;
    std::vector<Type> params;
    // App
    std::shared_ptr<const Node> fun, arg;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term wrap(std::shared_ptr<const Node> n) { return Term(std::move(n)); }
  std::shared_ptr<const Node> node_;
};

// Independent bottom-up type recomputation. Returns the type or throws
// IllTyped; does not trust the cached types.
Type typecheck(const Term& t);

// Bracket abstraction: builds a combinator term b with b x = body for the
// variable x (which must not appear in binder position anywhere else; there
// are no binders, so this is just the standard Pi/Sigma translation with the
// eta shortcut).
Term lambda_abstract(const std::string& var, const Type& var_type, const Term& body);

}  // namespace leb
