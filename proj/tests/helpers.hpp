#pragma once

#include <random>

#include "leb/eval.hpp"
#include "leb/parse.hpp"
#include "leb/term.hpp"
#include "leb/termlib.hpp"

namespace leb::testing {

// Random closed type-0 terms over a free type-1 oracle f: the corpus
// generator behind the property tests. Indices stay small so moduli stay
// within desk scale.
inline Term random_ground(std::mt19937_64& rng, int depth, bool allow_mu = false) {
  const Type O = Type::ground();
  Term f = Term::var("f", Type::pure(1));
  auto leaf = [&]() -> Term {
    switch (rng() % 3) {
      case 0: return Term::numeral(rng() % 3);
      case 1: return Term::app(f, Term::numeral(rng() % 6));
      default: return Term::numeral(rng() % 2);
    }
  };
  if (depth <= 0) return leaf();
  switch (rng() % 8) {
    case 0: return leaf();
    case 1: return Term::app(Term::constant(ConstKind::Succ), random_ground(rng, depth - 1, allow_mu));
    case 2:
      return tl::apply2(tl::tmin(), random_ground(rng, depth - 1, allow_mu),
                        random_ground(rng, depth - 1, allow_mu));
    case 3:
      return tl::apply2(tl::tmax(), random_ground(rng, depth - 1, allow_mu),
                        random_ground(rng, depth - 1, allow_mu));
    case 4:
      return tl::apply2(tl::monus(), random_ground(rng, depth - 1, allow_mu),
                        random_ground(rng, depth - 1, allow_mu));
    case 5: {
      Term guard = random_ground(rng, depth - 1, allow_mu);
      Term a = random_ground(rng, depth - 1, allow_mu);
      Term b = random_ground(rng, depth - 1, allow_mu);
      return Term::app(
          Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), guard), a), b);
    }
    case 6: {
      // small recursion: R0 n base (lam r i. step(r, i))
      Term n = Term::numeral(rng() % 4);
      Term base = random_ground(rng, depth - 1, allow_mu);
      Term r = Term::var("r", O), i = Term::var("i", O);
      Term step_body = rng() % 2 ? tl::apply2(tl::add(), r, i)
                                 : tl::apply2(tl::tmax(), r, Term::app(f, i));
      Term step = lambda_abstract("r", O, lambda_abstract("i", O, step_body));
      return Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), n), base), step);
    }
    default: {
      Term inner = Term::app(f, random_ground(rng, depth - 2 < 0 ? 0 : depth - 2, allow_mu));
      return tl::apply2(tl::add(), inner, leaf());
    }
  }
}

inline Term random_set_code(std::mt19937_64& rng, int depth = 3) {
  Term body = random_ground(rng, depth);
  return lambda_abstract("f", Type::pure(1), body);
}

inline Oracle random_oracle(std::mt19937_64& rng, size_t max_len = 14, uint64_t max_val = 1) {
  Oracle o;
  size_t len = rng() % (max_len + 1);
  for (size_t i = 0; i < len; ++i) o.prefix.push_back(rng() % (max_val + 1));
  o.beyond = rng() % (max_val + 1);
  return o;
}

}  // namespace leb::testing
