#pragma once

#include <optional>

#include "leb/budget.hpp"
#include "leb/term.hpp"

namespace leb {

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

// One rewrite by the kernel rules
//   Pi x y        -> x
//   Sigma x y z   -> x z (y z)
//   R0 0 y z      -> y
//   R0 (S x) y z  -> z (R0 x y z) x
//   Cond 0 x y    -> x
//   Cond (S u) x y-> y
// at the first redex in the given strategy order. nullopt means normal form.
std::optional<Term> reduce_step(const Term& t,
                                Strategy s = Strategy::LeftmostInnermost);

// Iterates reduce_step to a fixpoint; throws BudgetExhausted when the step
// budget runs out first. Idempotent on its own output.
Term normalize(const Term& t, const EvalLimits& lim = {},
               Strategy s = Strategy::LeftmostInnermost);

bool is_normal(const Term& t);

}  // namespace leb
