#pragma once

#include <string>
#include <vector>

#include "leb/formula.hpp"
#include "leb/term.hpp"

namespace leb {

// Extensional equality x =e_rho y: at ground type the prime formula, at
// arrow type forall u,v (u =e v -> xu =e xv & xu =e yv).
Formula ext_eq(const Type& rho, const Term& x, const Term& y);

// Relativizes every quantifier to hereditarily extensional objects:
// (forall x A)_e = forall x (x =e x -> A_e), (exists x A)_e with & instead.
Formula elim_ext_translate(const Formula& a);

// Inverse of the translation on its image: strips the relativizers back off.
Formula erase_relativizers(const Formula& a);

// Characteristic term of a quantifier-free formula: a type-0 term that is 0
// exactly when the formula holds (primes via |l - r|, & via max, | via min,
// ~ via 1-sg).
Term char_term(const Formula& qf);

// Quantifier collapse relative to mu: exists n (t(n)=0) becomes
// t(Mu(lam n. t n)) = 0, forall via the dual; innermost first. Only type-0
// quantifiers are allowed.
Formula qf_collapse(const Formula& a);

struct DialecticaShape {
  std::vector<std::pair<std::string, Type>> exists_vars;
  std::vector<std::pair<std::string, Type>> forall_vars;
  Formula matrix;

  std::string to_string() const;
};

// The combined negative-translation + Dialectica shape of a formula: a
// classical prenexing pass, then the functional-interpretation fold that
// turns the prefix into existential functionals over the universal
// variables. Disjunctions of quantified formulas pick up the usual type-0
// flag variable.
DialecticaShape nd_interpret(const Formula& a);

// The epsilon-Skolemized quantifier-free measure axiom over one free set
// variable X (type 2), with Leb/Eps standing for the skolemized lambda and
// epsilon. The single set and the indexed family are the slices
// X(cons 0 f) and X(cons (i+1) f) of the one argument; sigma-additivity is
// emitted at every finite prefix (the series has no modulus of convergence),
// with the prefix length mu-collapsed like the other type-0 quantifiers.
Formula skolemize_measure_axiom();

// Real-code equality as a mu-collapsed quantifier-free formula: the floor
// codes may differ by one, a gap of two at any precision separates reals.
Formula real_eq(const Term& a, const Term& b);

// Conjunct access for tests: 0 non-negativity + selector, 1 additivity,
// 2 basic opens, 3 coding compatibility.
Formula measure_axiom_conjunct(int i);

}  // namespace leb
