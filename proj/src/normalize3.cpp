#include "leb/normalize3.hpp"

#include <algorithm>

#include "leb/error.hpp"
#include "leb/reduce.hpp"
#include "leb/termlib.hpp"

namespace leb {

namespace {

// Cond lifting: (Cond_rho u a b) v -> Cond_rho' u (a v) (b v). Together with
// the kernel rules this pushes applications under stuck conditionals, so
// every surviving Cond is Cond_0 and every Leb/Eps ends up fully applied.
std::optional<Term> lift_cond(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  auto [head, args] = t.spine();
  if (!head.is_const(ConstKind::Cond) || args.size() < 4) return std::nullopt;
  Type rho = head.type_params()[0];
  if (!rho.is_arrow()) return std::nullopt;
  Term lifted = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {rho.res()}), args[0]),
                Term::app(args[1], args[3])),
      Term::app(args[2], args[3]));
  for (size_t i = 4; i < args.size(); ++i) lifted = Term::app(lifted, args[i]);
  return lifted;
}

}  // namespace

Term normalize_with_lifting(const Term& t, const EvalLimits& lim) {
  Term cur = t;
  for (int64_t i = 0; i < lim.max_steps; ++i) {
    std::optional<Term> next = reduce_step(cur);
    if (!next) {
      // kernel-normal; try one lifting step anywhere (innermost first)
      std::function<std::optional<Term>(const Term&)> lift_somewhere =
          [&](const Term& u) -> std::optional<Term> {
        if (!u.is_app()) return std::nullopt;
        if (auto f = lift_somewhere(u.fun())) return Term::app_unchecked(*f, u.arg());
        if (auto a = lift_somewhere(u.arg())) return Term::app_unchecked(u.fun(), *a);
        return lift_cond(u);
      };
      next = lift_somewhere(cur);
      if (!next) return cur;
    }
    cur = std::move(*next);
  }
  throw BudgetExhausted("normalize_with_lifting: step budget exhausted");
}

bool shape_invariant_holds(const Term& t) {
  // every Leb/Eps node must be the function of an application, and its
  // argument's free variables must all be ground
  std::function<bool(const Term&, bool)> go = [&](const Term& u, bool in_fun_position) -> bool {
    switch (u.tag()) {
      case Term::Tag::Var: return true;
      case Term::Tag::Const:
        if (u.const_kind() == ConstKind::Leb || u.const_kind() == ConstKind::Eps)
          return in_fun_position;
        return true;
      case Term::Tag::App: {
        if (u.fun().is_const(ConstKind::Leb) || u.fun().is_const(ConstKind::Eps)) {
          for (auto& [name, ty] : u.arg().free_vars())
            if (!ty.is_ground()) return false;
          return go(u.arg(), false);
        }
        return go(u.fun(), true) && go(u.arg(), false);
      }
    }
    return false;
  };
  return go(t, false);
}

namespace {

void scan_occurrences(const Term& t, Path& path, std::vector<GOccurrence>& out) {
  if (!t.is_app()) {
    if (t.is_const(ConstKind::Leb) || t.is_const(ConstKind::Eps))
      throw UnsupportedTerm("bare " + std::string(const_kind_name(t.const_kind())) +
                            " survived normalization");
    return;
  }
  if (t.fun().is_const(ConstKind::Leb) || t.fun().is_const(ConstKind::Eps)) {
    GOccurrence occ;
    occ.path = path;
    occ.kind = t.fun().const_kind();
    occ.argument = t.arg();
    out.push_back(std::move(occ));
    // nested occurrences inside the argument are scanned too
    path.push_back(1);
    scan_occurrences(t.arg(), path, out);
    path.pop_back();
    return;
  }
  path.push_back(0);
  scan_occurrences(t.fun(), path, out);
  path.pop_back();
  path.push_back(1);
  scan_occurrences(t.arg(), path, out);
  path.pop_back();
}

GOccurrence finish_occurrence(GOccurrence occ, ShapeMode mode, const EvalLimits& lim) {
  const Type T1 = Type::pure(1);
  for (auto& [name, ty] : occ.argument.free_vars()) {
    if (ty.degree() >= 1)
      throw UnsupportedTerm("occurrence argument keeps the non-ground free variable " + name +
                            " : " + ty.to_string());
    occ.residual_frees.emplace_back(name, ty);
  }
  occ.oracle_var = "f!";
  occ.body = normalize(Term::app(occ.argument, Term::var(occ.oracle_var, T1)), lim);
  occ.innermost = occ.argument.in_t0_mu();

  if (mode == ShapeMode::Strict) {
    // pack residual parameters into the oracle front: with j residuals the
    // coded oracle g supplies x_i = g(i) and the set's own oracle is
    // lam n. g(n + j)
    Term g = Term::var("g!", T1);
    size_t j = occ.residual_frees.size();
    Term shifted;
    if (j == 0) {
      shifted = g;
    } else {
      Term n = Term::var("n!", Type::ground());
      Term ix = n;
      for (size_t c = 0; c < j; ++c)
        ix = Term::app(Term::constant(ConstKind::Succ), ix);
      shifted = lambda_abstract("n!", Type::ground(), Term::app(g, ix));
    }
    Term arg = occ.argument;
    for (size_t i = 0; i < occ.residual_frees.size(); ++i)
      arg = arg.subst(occ.residual_frees[i].first, Term::app(g, Term::numeral(i)));
    occ.strict_code = lambda_abstract("g!", T1, Term::app(arg, shifted));
  } else {
    occ.strict_code = occ.argument;
  }
  return occ;
}

}  // namespace

Term Degree3Result::reabstracted() const {
  Term out = term;
  for (auto it = arg_vars.rbegin(); it != arg_vars.rend(); ++it)
    out = lambda_abstract(it->first, it->second, out);
  return out;
}

Degree3Result normalize_degree3(const Term& t, ShapeMode mode, const EvalLimits& lim) {
  if (t.type().degree() > 1)
    throw UnsupportedTerm("normalize_degree3 expects a term of type degree <= 1, got " +
                          t.type().to_string());
  for (auto& [name, ty] : t.free_vars())
    if (ty.degree() > 1)
      throw UnsupportedTerm("free variable " + name + " has degree > 1");

  Degree3Result res;
  // apply to fresh variables for every argument position (ground, since the
  // type has degree <= 1)
  Term body = t;
  Type ty = t.type();
  int ix = 0;
  while (ty.is_arrow()) {
    std::string vn = "arg" + std::to_string(ix++) + "!";
    res.arg_vars.emplace_back(vn, ty.arg());
    body = Term::app(body, Term::var(vn, ty.arg()));
    ty = ty.res();
  }
  res.term = normalize_with_lifting(body, lim);

  std::vector<GOccurrence> raw;
  Path path;
  scan_occurrences(res.term, path, raw);
  for (auto& occ : raw) res.occurrences.push_back(finish_occurrence(std::move(occ), mode, lim));

  // innermost-first: deeper paths first, then lexicographic for determinism
  std::stable_sort(res.occurrences.begin(), res.occurrences.end(),
                   [](const GOccurrence& a, const GOccurrence& b) {
                     if (a.path.size() != b.path.size()) return a.path.size() > b.path.size();
                     return a.path < b.path;
                   });
  return res;
}

Term replace_occurrences(const Term& t,
                         const std::function<Term(const GOccurrence&)>& interpret,
                         const EvalLimits& lim) {
  Degree3Result norm = normalize_degree3(t, ShapeMode::Permissive, lim);
  Term cur = norm.term;
  for (const GOccurrence& occ : norm.occurrences) {
    auto site = cur.at_path(occ.path);
    if (!site || !site->is_app() || !site->fun().is_const(occ.kind))
      throw Error("replace_occurrences: occurrence site moved");
    // refresh the record so outer occurrences see inner replacements
    GOccurrence fresh = occ;
    fresh.argument = site->arg();
    fresh.body = normalize(Term::app(fresh.argument, Term::var(fresh.oracle_var, Type::pure(1))),
                           lim);
    Term replacement = interpret(fresh);
    if (replacement.type() != site->type())
      throw TypeMismatch("replacement has type " + replacement.type().to_string() +
                         ", occurrence site has type " + site->type().to_string());
    auto allowed = fresh.argument.free_vars();
    for (auto& [name, ty] : replacement.free_vars())
      if (!allowed.count(name)) throw DanglingFreeVariable(name);
    cur = cur.replace_at(occ.path, replacement);
  }
  cur = normalize_with_lifting(cur, lim);
  // abstract the introduced argument variables back off
  for (auto it = norm.arg_vars.rbegin(); it != norm.arg_vars.rend(); ++it)
    cur = lambda_abstract(it->first, it->second, cur);
  return cur;
}

}  // namespace leb
