#pragma once

#include <functional>
#include <string>
#include <vector>

#include "leb/budget.hpp"
#include "leb/term.hpp"

namespace leb {

// One occurrence of a type-3 constant (Leb or Eps) after degree-3
// normalization: the constant sits at `path` applied to `argument`, a type-2
// set code whose free variables are at most the residual type-0 parameters
// listed here. `body` is the argument applied to the designated oracle
// variable and normalized, which is what the replacement constructions
// consume; `strict_code` additionally packs the residual parameters into the
// oracle by prefix-coding (f'(0) = x, f'(n+1) = f(n)).
struct GOccurrence {
  Path path;
  ConstKind kind = ConstKind::Leb;
  Term argument = Term::numeral(0);
  std::string oracle_var;
  Term body = Term::numeral(0);
  std::vector<std::pair<std::string, Type>> residual_frees;
  Term strict_code = Term::numeral(0);
  bool innermost = false;  // argument free of Leb/Eps
};

enum class ShapeMode { Permissive, Strict };

struct Degree3Result {
  // the normalized body: the input applied to fresh ground variables (one per
  // argument position of its type) and rewritten to normal form
  Term term = Term::numeral(0);
  // the introduced argument variables, outermost first
  std::vector<std::pair<std::string, Type>> arg_vars;
  std::vector<GOccurrence> occurrences;  // innermost-first order

  // the body abstracted back over arg_vars; applying it to arguments reduces
  // to the body, so the two are observationally equal
  Term reabstracted() const;
};

// Rewrites t (type degree <= 1, free variables of degree <= 1) with the
// kernel rules plus Cond lifting, (Cond u a b) v -> Cond u (a v) (b v), so
// that every Leb/Eps ends up applied to a set code whose free variables are
// type-0 residuals. The term is first applied to fresh variables for its
// argument positions; those may show up as residuals. Throws UnsupportedTerm
// when an occurrence argument keeps a free variable of degree >= 1 or a bare
// Leb/Eps survives.
Degree3Result normalize_degree3(const Term& t, ShapeMode mode = ShapeMode::Permissive,
                                const EvalLimits& lim = {});

// Syntactic scan: every Leb/Eps is applied to one argument whose free
// variables are all type 0.
bool shape_invariant_holds(const Term& t);

// Innermost-first replacement of the listed occurrences. The interpreter is
// called per occurrence with the current (post-inner-replacement) record and
// must return a term of the occurrence's result type whose free variables
// are contained in the occurrence argument's free variables. The result is
// renormalized.
Term replace_occurrences(const Term& t,
                         const std::function<Term(const GOccurrence&)>& interpret,
                         const EvalLimits& lim = {});

// Normal form under the kernel rules plus Cond lifting.
Term normalize_with_lifting(const Term& t, const EvalLimits& lim = {});

}  // namespace leb
