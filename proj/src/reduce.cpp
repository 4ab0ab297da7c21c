#include "leb/reduce.hpp"

#include "leb/error.hpp"

namespace leb {
namespace {

// If the whole term is a redex, contract it.
std::optional<Term> contract_root(const Term& t) {
  auto [head, args] = t.spine();
  if (!head.is_const()) return std::nullopt;
  switch (head.const_kind()) {
    case ConstKind::Pi:
      if (args.size() >= 2) {
        Term r = args[0];
        for (size_t i = 2; i < args.size(); ++i) r = Term::app(r, args[i]);
        return r;
      }
      return std::nullopt;
    case ConstKind::Sigma:
      if (args.size() >= 3) {
        Term r = Term::app(Term::app(args[0], args[2]), Term::app(args[1], args[2]));
        for (size_t i = 3; i < args.size(); ++i) r = Term::app(r, args[i]);
        return r;
      }
      return std::nullopt;
    case ConstKind::Rec0:
      if (args.size() >= 3) {
        const Term& n = args[0];
        Term r;
        if (n.is_const(ConstKind::Zero)) {
          r = args[1];
        } else if (n.is_app() && n.fun().is_const(ConstKind::Succ)) {
          Term pred = n.arg();
          Term rec = Term::app(Term::app(Term::app(head, pred), args[1]), args[2]);
          r = Term::app(Term::app(args[2], rec), pred);
        } else {
          return std::nullopt;
        }
        for (size_t i = 3; i < args.size(); ++i) r = Term::app(r, args[i]);
        return r;
      }
      return std::nullopt;
    case ConstKind::Cond:
      if (args.size() >= 3) {
        const Term& u = args[0];
        Term r;
        if (u.is_const(ConstKind::Zero)) {
          r = args[1];
        } else if (u.is_app() && u.fun().is_const(ConstKind::Succ)) {
          r = args[2];
        } else {
          return std::nullopt;
        }
        for (size_t i = 3; i < args.size(); ++i) r = Term::app(r, args[i]);
        return r;
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::optional<Term> step_innermost(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  if (auto f = step_innermost(t.fun())) return Term::app_unchecked(*f, t.arg());
  if (auto a = step_innermost(t.arg())) return Term::app_unchecked(t.fun(), *a);
  return contract_root(t);
}

std::optional<Term> step_outermost(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  if (auto r = contract_root(t)) return r;
  if (auto f = step_outermost(t.fun())) return Term::app_unchecked(*f, t.arg());
  if (auto a = step_outermost(t.arg())) return Term::app_unchecked(t.fun(), *a);
  return std::nullopt;
}

}  // namespace

std::optional<Term> reduce_step(const Term& t, Strategy s) {
  return s == Strategy::LeftmostInnermost ? step_innermost(t) : step_outermost(t);
}

Term normalize(const Term& t, const EvalLimits& lim, Strategy s) {
  Term cur = t;
  for (int64_t i = 0; i < lim.max_steps; ++i) {
    auto next = reduce_step(cur, s);
    if (!next) return cur;
    cur = std::move(*next);
  }
  throw BudgetExhausted("normalize: step budget exhausted (" + std::to_string(lim.max_steps) +
                        " steps)");
}

bool is_normal(const Term& t) { return !reduce_step(t).has_value(); }

}  // namespace leb
