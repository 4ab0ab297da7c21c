#include "leb/branch.hpp"

#include <algorithm>

#include "json.hpp"
#include "leb/error.hpp"

namespace leb {

std::vector<const BranchTree::Node*> BranchTree::leaves() const {
  std::vector<const Node*> out;
  std::function<void(const Node*)> go = [&](const Node* n) {
    if (!n) return;
    if (n->is_leaf()) {
      out.push_back(n);
      return;
    }
    go(n->lo.get());
    go(n->hi.get());
  };
  go(root.get());
  return out;
}

uint64_t BranchTree::depth_bound() const {
  uint64_t k = 0;
  for (const Node* leaf : leaves())
    for (auto& [ix, bit] : leaf->constraints) k = std::max(k, ix + 1);
  return k;
}

size_t BranchTree::node_count() const {
  size_t n = 0;
  std::function<void(const Node*)> go = [&](const Node* p) {
    if (!p) return;
    ++n;
    go(p->lo.get());
    go(p->hi.get());
  };
  go(root.get());
  return n;
}

static nlohmann::json node_json(const BranchTree::Node* n) {
  nlohmann::json j;
  if (n->is_leaf()) {
    j["value"] = n->value;
    nlohmann::json cs = nlohmann::json::array();
    for (auto& [ix, bit] : n->constraints) cs.push_back({{"index", ix}, {"bit", bit}});
    j["constraints"] = cs;
  } else {
    j["query"] = n->query;
    j["bit0"] = node_json(n->lo.get());
    j["bit1"] = node_json(n->hi.get());
  }
  return j;
}

std::string BranchTree::to_json() const { return node_json(root.get()).dump(2); }

namespace {

using NodePtr = std::shared_ptr<const BranchTree::Node>;

NodePtr explore(const BranchAttempt& attempt,
                std::vector<std::pair<uint64_t, uint8_t>>& constraints, size_t& nodes,
                size_t max_nodes) {
  if (++nodes > max_nodes)
    throw BudgetExhausted("branch exploration exceeded the node cap");
  if (constraints.size() > 62)
    throw BudgetExhausted("branch exploration exceeded depth 62");

  CellFn oracle = [&constraints](uint64_t ix) -> uint64_t {
    for (auto& [i, b] : constraints)
      if (i == ix) return b;
    throw NeedBit{ix};
  };

  try {
    EvalResult r = attempt(oracle);
    if (r.incomplete)
      throw BudgetExhausted(
          "modulus undetermined within budget (mu search exhausted on a branch)");
    auto leaf = std::make_shared<BranchTree::Node>();
    leaf->value = r.value;
    leaf->constraints = constraints;
    return leaf;
  } catch (const NeedBit& nb) {
    auto node = std::make_shared<BranchTree::Node>();
    node->query = (int64_t)nb.index;
    constraints.emplace_back(nb.index, 0);
    node->lo = explore(attempt, constraints, nodes, max_nodes);
    constraints.back().second = 1;
    node->hi = explore(attempt, constraints, nodes, max_nodes);
    constraints.pop_back();
    return node;
  }
}

}  // namespace

BranchTree branch_explore(const BranchAttempt& attempt, size_t max_nodes) {
  std::vector<std::pair<uint64_t, uint8_t>> constraints;
  size_t nodes = 0;
  BranchTree t;
  t.root = explore(attempt, constraints, nodes, max_nodes);
  return t;
}

BranchTree branch_evaluate(const Term& set_code, const EvalLimits& lim) {
  if (set_code.type() != Type::pure(2))
    throw Error("branch_evaluate: expected a term of type ((0 -> 0) -> 0), got " +
                set_code.type().to_string());
  if (!set_code.in_t0_mu())
    throw UnsupportedConstant("Leb/Eps inside a set code");
  auto frees = set_code.free_vars();
  if (!frees.empty())
    throw Error("branch_evaluate: set code must be closed, has free " + frees.begin()->first);

  // the code is closed, so its value is oracle-independent: build it once
  EvalCtx prep;
  prep.limits = lim;
  prep.steps_left = lim.max_steps;
  ValueRef code = eval_term(set_code, Env{}, prep);
  if (prep.incomplete)
    throw BudgetExhausted("modulus undetermined within budget (mu search exhausted "
                          "while building the code)");

  BranchAttempt attempt = [&code, lim](const CellFn& oracle) -> EvalResult {
    EvalCtx ctx;
    ctx.limits = lim;
    ctx.steps_left = lim.max_steps;
    ValueRef f = Value::fn([&oracle](const ValueRef& i, EvalCtx&) {
      return Value::nat(oracle(force_nat(i)));
    });
    ValueRef v = apply_value(code, f, ctx);
    return {force_nat(v), ctx.incomplete};
  };
  return branch_explore(attempt);
}

uint64_t uniform_modulus(const Term& set_code, const EvalLimits& lim) {
  return branch_evaluate(set_code, lim).depth_bound();
}

}  // namespace leb
