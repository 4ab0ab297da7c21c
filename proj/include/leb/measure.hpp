#pragma once

#include <optional>
#include <vector>

#include "leb/branch.hpp"
#include "leb/dyadic.hpp"
#include "leb/eval.hpp"
#include "leb/term.hpp"

namespace leb {

// Set codes are type-2 terms with the membership convention value 0 = member.
// The algebra works on raw codes via min / max / 1-sg.

Term set_empty();
Term set_full();
// [s]: oracles whose first |s| bits match s (reads bits through sg).
Term basic_open(const std::vector<uint8_t>& bits);
Term set_union(const Term& x, const Term& y);
Term set_intersection(const Term& x, const Term& y);
Term set_complement(const Term& x);
Term set_difference(const Term& x, const Term& y);
// lam f. sg(X(lam n. sg(f n)))
Term sg_normalize(const Term& x);

// X'_i = X_i minus the union of the earlier X_j; same union, pairwise disjoint.
std::vector<Term> disjointify(const std::vector<Term>& xs);
// Same at the term level for a family 0 -> 2 (via R0 prefix unions).
Term disjointify_indexed(const Term& family);
// lam f. X_{N(f)}(f) with N(f) = Mu(lam n. X_n(f)).
Term countable_union(const Term& family);
// Finite prefix union of a family (R0 fold of min).
Term prefix_union(const Term& family, const Term& count);

// Exact measure via the branch tree: sum of 2^-depth over value-0 leaves.
Dyadic measure_clopen(const Term& set_code, const EvalLimits& lim = {});

// Independent oracle: enumerate all 2^k prefixes, count member 0-extensions.
// Requires k >= uniform_modulus(set_code) for exactness.
Dyadic measure_bruteforce(const Term& set_code, uint32_t k, const EvalLimits& lim = {});

enum class Quant { Union, Inter };

// A set family with i type-0 parameters (term type 0 -> ... -> 0 -> 2) and an
// alternating quantifier signature, outermost first.
struct ArithSetFamily {
  Term family;
  std::vector<Quant> signature;
};

struct ArithMeasure {
  Dyadic value;
  enum class Cert { None, LowerBound, UpperBound } cert = Cert::None;
  Term truncation;  // the T0 code of X''_{m1..mi}
};

// Builds the R0-truncation at the given bounds and measures it exactly.
// Pure-union signatures certify a lower bound of the limit, pure-intersection
// an upper bound; alternating signatures return uncertified values.
ArithMeasure measure_arithmetical(const ArithSetFamily& f,
                                  const std::vector<uint64_t>& bounds,
                                  const EvalLimits& lim = {});

// The selector: a type-1 term naming the lexicographically least member
// cell (0-padded), or lam x.0 for empty sets. Whenever the set has positive
// measure the returned point is a member.
Term epsilon_select(const Term& set_code, const EvalLimits& lim = {});

// Exact interval of F(g) = sum 2^-(i+1) g(i) over extensions of the prefix.
DyadicInterval cantor_to_unit(const std::vector<uint8_t>& prefix);

// Canonical real code of a dyadic: the type-1 term k |-> floor(d * 2^k).
Term embed_dyadic(const Dyadic& d);

// Evaluation with Leb/Eps interpreted on the fly: Leb(X) becomes the real
// code of measure_clopen(X), Eps(X) the selected point. This is the semantic
// oracle the pipeline verifies against.
EvalResult evaluate_with_measure_oracle(const Term& t, const Env& env = {},
                                        const EvalLimits& lim = {});

// The interpreter behind evaluate_with_measure_oracle, for callers that
// drive evaluation themselves (formula evaluation, tests).
const GInterp& measure_oracle_interp();

// Membership of a finite-support point in a coded set.
bool is_member(const Term& set_code, const Oracle& point, const EvalLimits& lim = {});

// Branch exploration of a set-code *value* (used by the semantic oracle).
BranchTree branch_explore_value(const ValueRef& set_code, const EvalLimits& lim);

}  // namespace leb
