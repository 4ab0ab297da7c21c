#include "leb/majorant.hpp"

#include <algorithm>
#include <random>

#include "leb/error.hpp"
#include "leb/termlib.hpp"

namespace leb {

namespace {

const Type O = Type::ground();

// R0* n y z = R0 n y (lam r i. max(r, z r i)): accumulates the running max.
Term monotone_rec0() {
  static const Term t = [] {
    Term n = Term::var("n!", O), y = Term::var("y!", O);
    Term z = Term::var("z!", Type::arrow(O, Type::arrow(O, O)));
    Term r = Term::var("r!", O), i = Term::var("i!", O);
    Term step = lambda_abstract(
        "r!", O,
        lambda_abstract("i!", O,
                        tl::apply2(tl::tmax(), r, tl::apply2(z, r, i))));
    Term loop = Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), n), y), step);
    return lambda_abstract(
        "n!", O,
        lambda_abstract("y!", O, lambda_abstract("z!", z.type(), loop)));
  }();
  return t;
}

// Cond*_rho u x y = the pointwise max of x and y (the guard is kept as an
// argument so the type matches, and call-by-value still evaluates it).
Term pointwise_max_cond(const Type& rho) {
  Term u = Term::var("u!", O);
  Term x = Term::var("x!", rho), y = Term::var("y!", rho);
  std::vector<std::pair<std::string, Type>> binders;
  Term xs = x, ys = y;
  Type cur = rho;
  int n = 0;
  while (cur.is_arrow()) {
    std::string vn = "w" + std::to_string(n++) + "!";
    Term v = Term::var(vn, cur.arg());
    binders.emplace_back(vn, cur.arg());
    xs = Term::app(xs, v);
    ys = Term::app(ys, v);
    cur = cur.res();
  }
  Term body = tl::apply2(tl::tmax(), xs, ys);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = lambda_abstract(it->first, it->second, body);
  return lambda_abstract(
      "u!", O, lambda_abstract("x!", rho, lambda_abstract("y!", rho, body)));
}

Term star(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var: return t;
    case Term::Tag::Const:
      switch (t.const_kind()) {
        case ConstKind::Zero:
        case ConstKind::Succ:
        case ConstKind::Pi:
        case ConstKind::Sigma: return t;
        case ConstKind::Rec0: return monotone_rec0();
        case ConstKind::Cond: return pointwise_max_cond(t.type_params()[0]);
        case ConstKind::Mu:
        case ConstKind::Leb:
        case ConstKind::Eps:
          throw UnsupportedConstant(std::string(const_kind_name(t.const_kind())) +
                                    " has no T0 majorant");
      }
      throw Error("unreachable");
    case Term::Tag::App: return Term::app(star(t.fun()), star(t.arg()));
  }
  throw Error("unreachable");
}

}  // namespace

Term majorize(const Term& t) { return star(t); }

Oracle generic_majorant(const Oracle& f) {
  Oracle m;
  uint64_t run = 0;
  for (uint64_t v : f.prefix) {
    run = std::max(run, v);
    m.prefix.push_back(run);
  }
  m.beyond = std::max(run, f.beyond);
  return m;
}

uint64_t static_modulus_bound(const Term& set_code, const EvalLimits& lim) {
  if (set_code.type() != Type::pure(2))
    throw Error("static_modulus_bound: expected a type-2 term");
  if (!set_code.free_vars().empty())
    throw Error("static_modulus_bound: set code must be closed");
  Term starred = majorize(set_code);
  Term body = Term::app(starred, Term::var("f!", Type::pure(1)));

  bool queried = false;
  uint64_t max_index = 0;
  Env env;
  env.assign_oracle_hooked("f!", Oracle::ones(), [&](uint64_t ix) {
    queried = true;
    max_index = std::max(max_index, ix);
  });
  evaluate(body, env, lim);
  return queried ? max_index + 1 : 0;
}

bool check_majorizes(const Term& t_star, const Term& t, int samples, uint64_t seed,
                     const EvalLimits& lim) {
  std::mt19937_64 rng(seed);
  Term body = Term::app(t, Term::var("f!", Type::pure(1)));
  Term body_star = Term::app(t_star, Term::var("f!", Type::pure(1)));
  for (int s = 0; s < samples; ++s) {
    Oracle f;
    size_t len = rng() % 6;
    for (size_t i = 0; i < len; ++i) f.prefix.push_back(rng() % 3);
    f.beyond = rng() % 2;
    Oracle fm = generic_majorant(f);

    Env env, env_star;
    env.assign_oracle("f!", f);
    env_star.assign_oracle("f!", fm);
    uint64_t plain = evaluate(body, env, lim).value;
    uint64_t starred = evaluate(body_star, env_star, lim).value;
    if (starred < plain) return false;

    // monotonicity of t* on an ordered pair: f^M <= g pointwise
    Oracle g = fm;
    for (auto& v : g.prefix) v += rng() % 2;
    g.beyond = fm.beyond + rng() % 2;
    Env env_g;
    env_g.assign_oracle("f!", generic_majorant(g));
    uint64_t upper = evaluate(body_star, env_g, lim).value;
    if (upper < starred) return false;
  }
  return true;
}

}  // namespace leb
