#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "leb/error.hpp"
#include "leb/parse.hpp"
#include "leb/reduce.hpp"
#include "leb/term.hpp"
#include "leb/termlib.hpp"

using namespace leb;

TEST_CASE("finite types: degree and pure types") {
  Type o = Type::ground();
  CHECK(o.degree() == 0);
  CHECK(Type::pure(1).degree() == 1);
  CHECK(Type::pure(2).degree() == 2);
  CHECK(Type::pure(3).degree() == 3);
  // deg(tau(rho)) = max(deg tau, deg rho + 1)
  Type t = Type::arrow(Type::pure(2), Type::pure(1));  // the Leb type
  CHECK(t.degree() == 3);
  CHECK(Type::pure(2) == Type::arrow(Type::pure(1), o));
  CHECK(Type::pure(1) != Type::pure(2));
  CHECK(Type::pure(2).to_string() == "((0 -> 0) -> 0)");
}

TEST_CASE("constant types and typecheck") {
  CHECK(Term::constant(ConstKind::Succ).type() == Type::pure(1));
  CHECK(typecheck(Term::app(Term::constant(ConstKind::Succ), Term::numeral(0))) ==
        Type::ground());
  CHECK_THROWS_AS(Term::app(Term::numeral(0), Term::numeral(0)), IllTyped);
  // unchecked construction is caught by the independent recomputation
  Term bad = Term::app_unchecked(Term::numeral(0), Term::numeral(0));
  CHECK_THROWS_AS(typecheck(bad), IllTyped);
  // Leb has type (2 -> 1), degree 3
  CHECK(Term::constant(ConstKind::Leb).type().degree() == 3);
}

TEST_CASE("parser round trips and sugar") {
  Term t = parse_term("(S (S 0))");
  CHECK(t.as_numeral() == 2);
  CHECK(parse_term("7").as_numeral() == 7);
  CHECK(parse_term("((lam x:0 (S x)) 3)").as_numeral() == 4);  // eta gives (S 3)
  // printer output re-parses to the same term
  Term u = parse_term("(lam f:(0 -> 0) (f (f 0)))");
  CHECK(parse_term(u.to_string()) == u);
  CHECK_THROWS_AS(parse_term("(0"), ParseError);
  CHECK_THROWS_AS(parse_term("(0 0)"), ParseError);
  // higher recursors do not exist: R0 is the only recursor keyword, anything
  // else is an ordinary identifier
  CHECK(parse_term("(R1 0)").fun().is_var());
}

TEST_CASE("bracket abstraction satisfies the defining equation") {
  // (lam x. body) a  evaluates like  body[x := a]
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    Term body = testing::random_ground(rng, 3);
    Term abs = lambda_abstract("f", Type::pure(1), body);
    Oracle o = testing::random_oracle(rng);
    Env env;
    env.assign_oracle("g", o);
    Term lhs = Term::app(abs, Term::var("g", Type::pure(1)));
    Env env2;
    env2.assign_oracle("f", o);
    CHECK(evaluate(lhs, env).value == evaluate(body, env2).value);
  }
}

TEST_CASE("reduce_step: the six kernel rules") {
  // R0 0 y z -> y
  Term y = Term::numeral(5);
  Term z = tl::add();
  Term r0 = Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), Term::numeral(0)), y), z);
  auto s = reduce_step(r0);
  REQUIRE(s.has_value());
  CHECK(*s == y);

  // Cond(S 0, a, b) -> b
  Term cond = parse_term("(Cond 1 10 20)");
  Term n = normalize(cond);
  CHECK(n.as_numeral() == 20);
  CHECK(normalize(parse_term("(Cond 0 10 20)")).as_numeral() == 10);

  // Pi x y -> x, Sigma x y z -> x z (y z)
  CHECK(normalize(parse_term("((Pi 3) 9)")).as_numeral() == 3);
  CHECK(normalize(parse_term("(Sigma Pi Pi 4)")).as_numeral() == 4);  // SKK = I

  // variables are normal
  CHECK(!reduce_step(Term::var("x", Type::ground())).has_value());
  // subject reduction on a corpus
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    Term t = testing::random_ground(rng, 3);
    Term cur = t;
    for (int k = 0; k < 10; ++k) {
      auto next = reduce_step(cur);
      if (!next) break;
      CHECK(typecheck(*next) == typecheck(cur));
      cur = *next;
    }
  }
}

TEST_CASE("normalize: hand-reduced examples") {
  // Sigma Pi a b: Sigma x y z -> x z (y z), then Pi b (a b) -> b
  Term t = parse_term("(Sigma Pi[0,0] S 9)");
  CHECK(normalize(t).as_numeral() == 9);
  // recursor as addition: R0 2 2 (lam r i. S r) = 4
  Term add22 = parse_term("(R0 2 2 (lam r:0 (lam i:0 (S r))))");
  CHECK(normalize(add22).as_numeral() == 4);
  // idempotence
  Term n = normalize(parse_term("(Sigma Pi Pi 4)"));
  CHECK(normalize(n) == n);
  // budget exhaustion reports rather than loops
  Term heavy = parse_term("(R0 200 0 (lam r:0 (lam i:0 (S r))))");
  CHECK_THROWS_AS(normalize(heavy, EvalLimits{10, 10}), BudgetExhausted);
}

TEST_CASE("evaluate agrees with rewriting on closed terms (two strategies)") {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Term body = testing::random_ground(rng, 3);
    // close the oracle with a concrete finite-support term
    std::vector<uint8_t> bits;
    for (int b = 0; b < 4; ++b) bits.push_back(rng() % 2);
    Term closed = Term::app(lambda_abstract("f", Type::pure(1), body), tl::oracle_term(bits));
    Term n1 = normalize(closed);
    Term n2 = normalize(closed, {}, Strategy::LeftmostOutermost);
    REQUIRE(n1.as_numeral().has_value());
    CHECK(n1 == n2);
    Env env;
    env.assign_oracle("f", Oracle::from_bits(bits));
    CHECK(evaluate(body, env).value == *n1.as_numeral());
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("SUB schemata hold observationally") {
  // for contexts C[.] of type 0: evaluate(C[R0 0 y z]) = evaluate(C[y]) etc.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    Term y = testing::random_ground(rng, 2);
    Term hole = Term::var("hole", Type::ground());
    Term context = tl::apply2(tl::add(), testing::random_ground(rng, 2),
                              Term::app(Term::constant(ConstKind::Succ), hole));
    Term redex = Term::app(
        Term::app(Term::app(Term::constant(ConstKind::Rec0), Term::numeral(0)), y), tl::add());
    Env env;
    env.assign_oracle("f", testing::random_oracle(rng));
    uint64_t with_redex = evaluate(context.subst("hole", redex), env).value;
    uint64_t with_contractum = evaluate(context.subst("hole", y), env).value;
    CHECK(with_redex == with_contractum);
  }
  // Cond rules under a context
  Term a = Term::numeral(3), b = Term::numeral(8);
  Term c0 = parse_term("(Cond 0 3 8)"), c1 = parse_term("(Cond 5 3 8)");
  CHECK(evaluate(tl::apply2(tl::add(), c0, c1)).value ==
        evaluate(tl::apply2(tl::add(), a, b)).value);
}

TEST_CASE("evaluate: oracles and errors") {
  // S(S 0) = 2
  CHECK(evaluate(parse_term("(S (S 0))")).value == 2);
  // f(S 0) with all-zero oracle
  Env env;
  env.assign_oracle("f", Oracle::zeros());
  CHECK(evaluate(parse_term("(f 1)"), env).value == 0);
  CHECK_THROWS_AS(evaluate(parse_term("(g 1)"), env), UnassignedVariable);
  // type-0 assignment
  Env env2;
  env2.assign_nat("x", 41);
  CHECK(evaluate(parse_term("(S x)"), env2).value == 42);
}

TEST_CASE("mu_eval semantics") {
  // constant zero: least zero is 0
  CHECK(mu_eval([](uint64_t) { return 0; }).value == 0);
  // first zero at 3: |n - 3|
  auto r = mu_eval([](uint64_t n) { return n > 3 ? n - 3 : 3 - n; });
  CHECK(r.value == 3);
  CHECK(!r.incomplete);
  // never zero: flag set, value 0, bound 10^4
  auto never = mu_eval([](uint64_t) { return 1; }, EvalLimits{1000000, 10000});
  CHECK(never.value == 0);
  CHECK(never.incomplete);

  // through the term language: Mu(f) with f(n) = |n - 3|
  Env env;
  env.assign_oracle("f", Oracle{{3, 2, 1, 0}, 1});
  auto tr = evaluate(parse_term("(Mu f)"), env);
  CHECK(tr.value == 3);
  CHECK(!tr.incomplete);
  // mu equation: when the flag is clear, f(mu f) = 0 and no earlier zero
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    Oracle o = testing::random_oracle(rng, 8, 2);
    Env e;
    e.assign_oracle("f", o);
    auto res = evaluate(parse_term("(Mu f)"), e);
    if (!res.incomplete) {
      CHECK(o.at(res.value) == 0);
      for (uint64_t j = 0; j < res.value; ++j) CHECK(o.at(j) != 0);
    }
  }
}

TEST_CASE("term library computes arithmetic") {
  auto ev2 = [](const Term& f, uint64_t a, uint64_t b) {
    return evaluate(tl::apply2(f, Term::numeral(a), Term::numeral(b))).value;
  };
  CHECK(ev2(tl::add(), 3, 4) == 7);
  CHECK(ev2(tl::monus(), 3, 5) == 0);
  CHECK(ev2(tl::monus(), 5, 3) == 2);
  CHECK(ev2(tl::tmin(), 4, 9) == 4);
  CHECK(ev2(tl::tmax(), 4, 9) == 9);
  CHECK(ev2(tl::mul(), 6, 7) == 42);
  CHECK(ev2(tl::absdiff(), 3, 10) == 7);
  CHECK(ev2(tl::div_pow2(), 40, 3) == 5);
  CHECK(ev2(tl::lt_char(), 3, 4) == 0);
  CHECK(ev2(tl::lt_char(), 4, 4) != 0);
  CHECK(evaluate(Term::app(tl::half(), Term::numeral(9))).value == 4);
  CHECK(evaluate(Term::app(tl::pow2(), Term::numeral(6))).value == 64);
  CHECK(evaluate(Term::app(tl::sg(), Term::numeral(0))).value == 0);
  CHECK(evaluate(Term::app(tl::sg(), Term::numeral(9))).value == 1);
  CHECK(evaluate(Term::app(tl::cosg(), Term::numeral(0))).value == 1);

  // string codes
  std::vector<uint8_t> bits{1, 0, 1};
  uint64_t code = tl::seq_code(bits);
  CHECK(tl::seq_decode(code) == bits);
  CHECK(evaluate(Term::app(tl::seq_lth(), Term::numeral(code))).value == 3);
  for (size_t i = 0; i < bits.size(); ++i)
    CHECK(evaluate(tl::apply2(tl::seq_get(), Term::numeral(code), Term::numeral(i))).value ==
          bits[i]);
  CHECK(evaluate(Term::app(tl::seq_lth(), Term::numeral(tl::seq_code({})))).value == 0);

  // bounded mu: least zero of g below m
  Term g = tl::oracle_term({1, 1, 0, 1});
  CHECK(evaluate(tl::apply2(tl::bounded_mu(), Term::numeral(10), g)).value == 2);
  CHECK(evaluate(tl::apply2(tl::bounded_mu(), Term::numeral(2), g)).value == 0);

  // cons_oracle: f'(0) = x, f'(n+1) = f(n)
  Term consd = Term::app(Term::app(tl::cons_oracle(), Term::numeral(9)), tl::oracle_term({1}));
  CHECK(evaluate(Term::app(consd, Term::numeral(0))).value == 9);
  CHECK(evaluate(Term::app(consd, Term::numeral(1))).value == 1);
  CHECK(evaluate(Term::app(consd, Term::numeral(2))).value == 0);

  // Cantor pairing round trip
  for (uint64_t a = 0; a < 7; ++a)
    for (uint64_t b = 0; b < 7; ++b) {
      auto [x, y] = tl::cantor_unpair(tl::cantor_pair(a, b));
      CHECK(x == a);
      CHECK(y == b);
    }
}

TEST_CASE("fragment checks") {
  CHECK(parse_term("(lam f:(0 -> 0) (f 0))").in_t0());
  CHECK(!parse_term("(Mu (lam n:0 n))").in_t0());
  CHECK(parse_term("(Mu (lam n:0 n))").in_t0_mu());
  CHECK(!parse_term("(Leb (lam f:(0 -> 0) (f 0)))").in_t0_mu());
}
