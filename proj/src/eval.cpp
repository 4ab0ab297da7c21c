#include "leb/eval.hpp"

#include "leb/error.hpp"

namespace leb {

ValueRef Value::nat(uint64_t n) {
  auto v = std::make_shared<Value>();
  v->kind_ = K::Nat;
  v->nat_ = n;
  return v;
}

ValueRef Value::prim(ConstKind k, std::vector<Type> params) {
  auto v = std::make_shared<Value>();
  v->kind_ = K::Prim;
  v->prim_kind_ = k;
  v->prim_params_ = std::move(params);
  return v;
}

ValueRef Value::fn(Fn f) {
  auto v = std::make_shared<Value>();
  v->kind_ = K::Fun;
  v->fun_ = std::move(f);
  return v;
}

uint64_t force_nat(const ValueRef& v) {
  if (!v->is_nat()) throw Error("expected a numeric value");
  return v->nat_value();
}

static int prim_arity(ConstKind k) {
  switch (k) {
    case ConstKind::Zero: return 0;
    case ConstKind::Succ: return 1;
    case ConstKind::Pi: return 2;
    case ConstKind::Sigma: return 3;
    case ConstKind::Rec0: return 3;
    case ConstKind::Cond: return 3;
    case ConstKind::Mu: return 1;
    case ConstKind::Leb: return 1;
    case ConstKind::Eps: return 1;
  }
  return 0;
}

ValueRef delta(const Value& sat, EvalCtx& ctx) {
  const auto& a = sat.prim_args_;
  switch (sat.prim_kind_) {
    case ConstKind::Succ: return Value::nat(force_nat(a[0]) + 1);
    case ConstKind::Pi: return a[0];
    case ConstKind::Sigma: {
      ValueRef xz = apply_value(a[0], a[2], ctx);
      ValueRef yz = apply_value(a[1], a[2], ctx);
      return apply_value(xz, yz, ctx);
    }
    case ConstKind::Rec0: {
      uint64_t n = force_nat(a[0]);
      ValueRef r = a[1];
      for (uint64_t i = 0; i < n; ++i)
        r = apply_value(apply_value(a[2], r, ctx), Value::nat(i), ctx);
      return r;
    }
    case ConstKind::Cond: return force_nat(a[0]) == 0 ? a[1] : a[2];
    case ConstKind::Mu: {
      for (int64_t x = 0; x < ctx.limits.mu_bound; ++x) {
        if (force_nat(apply_value(a[0], Value::nat((uint64_t)x), ctx)) == 0)
          return Value::nat((uint64_t)x);
      }
      ctx.incomplete = true;
      return Value::nat(0);
    }
    case ConstKind::Leb:
    case ConstKind::Eps: {
      if (ctx.g_interp) return (*ctx.g_interp)(sat.prim_kind_, a[0], ctx);
      throw UnsupportedConstant(std::string(const_kind_name(sat.prim_kind_)) +
                                " needs a semantic measure oracle");
    }
    case ConstKind::Zero: break;
  }
  throw Error("delta: unreachable");
}

ValueRef apply_value(const ValueRef& f, const ValueRef& a, EvalCtx& ctx) {
  if (--ctx.steps_left < 0)
    throw BudgetExhausted("evaluation step budget exhausted");
  if (f->kind_ == Value::K::Fun) return f->fun_(a, ctx);
  if (f->kind_ == Value::K::Prim) {
    Value next = *f;
    next.prim_args_.push_back(a);
    if ((int)next.prim_args_.size() == prim_arity(next.prim_kind_)) return delta(next, ctx);
    return std::make_shared<Value>(std::move(next));
  }
  throw Error("applying a numeric value");
}

void Env::assign_nat(const std::string& name, uint64_t n) { vars[name] = Value::nat(n); }

Oracle Oracle::from_bits(const std::vector<uint8_t>& bits, uint64_t beyond) {
  Oracle o;
  o.prefix.assign(bits.begin(), bits.end());
  o.beyond = beyond;
  return o;
}

void Env::assign_oracle(const std::string& name, const Oracle& o) {
  vars[name] = Value::fn([o](const ValueRef& i, EvalCtx&) {
    return Value::nat(o.at(force_nat(i)));
  });
}

void Env::assign_oracle_hooked(const std::string& name, const Oracle& o,
                               std::function<void(uint64_t)> on_query) {
  vars[name] = Value::fn([o, on_query = std::move(on_query)](const ValueRef& i, EvalCtx&) {
    uint64_t ix = force_nat(i);
    on_query(ix);
    return Value::nat(o.at(ix));
  });
}

void Env::assign_value(const std::string& name, ValueRef v) { vars[name] = std::move(v); }

ValueRef eval_term(const Term& t, const Env& env, EvalCtx& ctx) {
  switch (t.tag()) {
    case Term::Tag::Var: {
      auto it = env.vars.find(t.var_name());
      if (it == env.vars.end()) throw UnassignedVariable(t.var_name());
      return it->second;
    }
    case Term::Tag::Const:
      if (t.const_kind() == ConstKind::Zero) return Value::nat(0);
      return Value::prim(t.const_kind(), t.type_params());
    case Term::Tag::App: {
      ValueRef f = eval_term(t.fun(), env, ctx);
      ValueRef a = eval_term(t.arg(), env, ctx);
      return apply_value(f, a, ctx);
    }
  }
  throw Error("eval: malformed term");
}

EvalResult evaluate(const Term& t, const Env& env, const EvalLimits& lim,
                    const GInterp* g_interp) {
  if (t.type() != Type::ground())
    throw Error("evaluate: term must have type 0, got " + t.type().to_string());
  EvalCtx ctx;
  ctx.limits = lim;
  ctx.steps_left = lim.max_steps;
  ctx.g_interp = g_interp;
  ValueRef v = eval_term(t, env, ctx);
  return {force_nat(v), ctx.incomplete};
}

EvalResult mu_eval(const std::function<uint64_t(uint64_t)>& f, const EvalLimits& lim) {
  for (int64_t x = 0; x < lim.mu_bound; ++x)
    if (f((uint64_t)x) == 0) return {(uint64_t)x, false};
  return {0, true};
}

}  // namespace leb
