#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "leb/eval.hpp"
#include "leb/term.hpp"

namespace leb {

// Finite decision tree of a type-2 term over Cantor space. Internal nodes
// carry the queried oracle index, edges the answered bit; leaves carry the
// value and the (index, bit) constraints collected along their path. On any
// path the queried indices are pairwise distinct, so the leaves partition
// Cantor space into disjoint basic cells: sum over leaves of 2^-#constraints
// is exactly 1.
struct BranchTree {
  struct Node {
    int64_t query = -1;  // -1 for leaves
    uint64_t value = 0;  // leaf value
    std::vector<std::pair<uint64_t, uint8_t>> constraints;  // leaf path
    std::shared_ptr<const Node> lo, hi;

    bool is_leaf() const { return query < 0; }
  };
  std::shared_ptr<const Node> root;

  std::vector<const Node*> leaves() const;
  // 1 + max queried index over all leaves; 0 when nothing is queried.
  uint64_t depth_bound() const;
  size_t node_count() const;
  std::string to_json() const;
};

// One evaluation attempt against a partial 0/1 oracle. The oracle answers
// constrained indices and throws NeedBit for fresh ones; the explorer then
// forks on both bits and restarts.
struct NeedBit {
  uint64_t index;
};

using CellFn = std::function<uint64_t(uint64_t)>;
using BranchAttempt = std::function<EvalResult(const CellFn&)>;

// Exhaustive symbolic branching. Throws BudgetExhausted when an attempt
// exhausts its budget or reports an incomplete mu search ("modulus
// undetermined within budget"), or when the tree grows past the node cap.
BranchTree branch_explore(const BranchAttempt& attempt, size_t max_nodes = 1u << 22);

// Branching evaluation of a type-2 term (Mu allowed, Leb/Eps rejected).
// Each root-to-leaf attempt gets a fresh step budget.
BranchTree branch_evaluate(const Term& set_code, const EvalLimits& lim = {});

// Modulus of uniform continuity: oracles agreeing on [0, k) give equal values.
uint64_t uniform_modulus(const Term& set_code, const EvalLimits& lim = {});

}  // namespace leb
