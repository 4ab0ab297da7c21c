#pragma once

#include "leb/eval.hpp"
#include "leb/term.hpp"

namespace leb {

// Howard-style majorant of a T0 term: constants are replaced by monotone
// dominating terms (R0 by the max-accumulating recursor, Cond by the
// pointwise max of its arms), everything else is structural. Throws
// UnsupportedConstant on Mu/Leb/Eps.
Term majorize(const Term& t);

// The generic type-1 majorant f^M(n) = max_{i<=n} f(i) of a finite-support
// oracle (constant beyond the support, hence still finite-support).
Oracle generic_majorant(const Oracle& f);

// Static modulus bound of a closed type-2 term: 1 + the largest index the
// majorized term queries on the constant-one oracle (the pointwise majorant
// of every 0/1 oracle). Dominates uniform_modulus.
uint64_t static_modulus_bound(const Term& set_code, const EvalLimits& lim = {});

// Sampled check of t* maj t at type 2: eval(t* f^M) >= eval(t f) on random
// finite oracles, and monotonicity of t* on ordered oracle pairs.
bool check_majorizes(const Term& t_star, const Term& t, int samples, uint64_t seed,
                     const EvalLimits& lim = {});

}  // namespace leb
