#pragma once

#include <cstdint>

namespace leb {

// Limits that make evaluation total. max_steps bounds rewrite/apply steps,
// mu_bound bounds every mu search. A mu search that exhausts its bound
// answers 0 and raises the incomplete flag on the result instead of failing:
// the semantic mu returns 0 when no zero exists, but a bounded search cannot
// certify absence.
struct EvalLimits {
  int64_t max_steps = 2'000'000;
  int64_t mu_bound = 10'000;
};

}  // namespace leb
