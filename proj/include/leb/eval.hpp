#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "leb/budget.hpp"
#include "leb/term.hpp"

namespace leb {

class Value;
using ValueRef = std::shared_ptr<const Value>;

struct EvalCtx;

// Interprets Leb/Eps applications during evaluation (the semantic measure
// oracle); absent, those constants are evaluation errors.
using GInterp = std::function<ValueRef(ConstKind, const ValueRef&, EvalCtx&)>;

struct EvalCtx {
  EvalLimits limits;
  int64_t steps_left = 0;
  bool incomplete = false;
  const GInterp* g_interp = nullptr;
};

// Semantic values: naturals, partially applied constants, or C++-backed
// functions (oracles and measure results). Immutable.
class Value {
 public:
  using Fn = std::function<ValueRef(const ValueRef&, EvalCtx&)>;

  static ValueRef nat(uint64_t n);
  static ValueRef prim(ConstKind k, std::vector<Type> params);
  static ValueRef fn(Fn f);

  bool is_nat() const { return kind_ == K::Nat; }
  uint64_t nat_value() const { return nat_; }

 private:
  enum class K { Nat, Prim, Fun };
  K kind_;
  uint64_t nat_ = 0;
  ConstKind prim_kind_ = ConstKind::Zero;
  std::vector<Type> prim_params_;
  std::vector<ValueRef> prim_args_;
  Fn fun_;

  friend ValueRef apply_value(const ValueRef&, const ValueRef&, EvalCtx&);
  friend ValueRef delta(const Value&, EvalCtx&);
};

// Evaluation is call-by-value: every argument is evaluated before a constant
// fires, so Cond evaluates both arms (values agree with the rewrite semantics
// on well-typed terms; the step count and the incomplete flag are
// conservative).
ValueRef apply_value(const ValueRef& f, const ValueRef& a, EvalCtx& ctx);
uint64_t force_nat(const ValueRef& v);

// Finite-support numeric oracle: prefix values, then a constant.
struct Oracle {
  std::vector<uint64_t> prefix;
  uint64_t beyond = 0;

  uint64_t at(uint64_t i) const { return i < prefix.size() ? prefix[i] : beyond; }
  static Oracle zeros() { return {}; }
  static Oracle ones() { return {{}, 1}; }
  static Oracle from_bits(const std::vector<uint8_t>& bits, uint64_t beyond = 0);
};

struct Env {
  std::map<std::string, ValueRef> vars;

  void assign_nat(const std::string& name, uint64_t n);
  void assign_oracle(const std::string& name, const Oracle& o);
  // Oracle that additionally reports every queried index.
  void assign_oracle_hooked(const std::string& name, const Oracle& o,
                            std::function<void(uint64_t)> on_query);
  void assign_value(const std::string& name, ValueRef v);
};

struct EvalResult {
  uint64_t value = 0;
  bool incomplete = false;
};

// Evaluates a term of type 0. Free variables must be assigned in env.
EvalResult evaluate(const Term& t, const Env& env = {}, const EvalLimits& lim = {},
                    const GInterp* g_interp = nullptr);

// Core evaluator over an explicit context (shared budget across calls).
ValueRef eval_term(const Term& t, const Env& env, EvalCtx& ctx);

// Least x < lim.mu_bound with f(x) = 0; otherwise 0 with incomplete set.
EvalResult mu_eval(const std::function<uint64_t(uint64_t)>& f, const EvalLimits& lim = {});

}  // namespace leb
