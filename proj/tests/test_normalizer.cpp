#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "leb/error.hpp"
#include "leb/measure.hpp"
#include "leb/normalize3.hpp"
#include "leb/parse.hpp"
#include "leb/reduce.hpp"
#include "leb/termlib.hpp"

using namespace leb;

namespace {

// evaluate a type-degree-<=1 term under the semantic measure oracle at the
// given ground arguments
uint64_t sem_eval(const Term& t, const std::vector<uint64_t>& args,
                  const Env& env = {}) {
  Term applied = t;
  for (uint64_t a : args) applied = Term::app(applied, Term::numeral(a));
  return evaluate_with_measure_oracle(applied, env).value;
}

}  // namespace

TEST_CASE("already-normal occurrence is reported unchanged") {
  Term t = parse_term("(Leb (lam f:(0 -> 0) (f 0)))");
  Degree3Result r = normalize_degree3(t);
  REQUIRE(r.occurrences.size() == 1);
  CHECK(r.occurrences[0].kind == ConstKind::Leb);
  CHECK(r.occurrences[0].residual_frees.empty());
  CHECK(r.occurrences[0].innermost);
  // re-abstraction undoes the eta application
  CHECK(r.reabstracted() == normalize(t));
  CHECK(shape_invariant_holds(r.term));
}

TEST_CASE("residual type-0 parameter is surfaced") {
  // lam x. Leb(lam f. Cond(x, f 0, f 1))
  Term t = parse_term(
      "(lam x:0 (Leb (lam f:(0 -> 0) (Cond x (f 0) (f 1)))))");
  Degree3Result r = normalize_degree3(t);
  // type 0 -> (0 -> 0): the set parameter x and the real-code precision
  REQUIRE(r.arg_vars.size() == 2);
  REQUIRE(r.occurrences.size() == 1);
  REQUIRE(r.occurrences[0].residual_frees.size() == 1);
  CHECK(r.occurrences[0].residual_frees[0].first == r.arg_vars[0].first);
  CHECK(shape_invariant_holds(r.term));

  // observational equality at x in {0, 1} on sampled precisions: the body
  // with both argument variables substituted behaves like the original
  for (uint64_t x = 0; x < 2; ++x) {
    for (uint32_t k = 0; k <= 4; ++k) {
      Term orig = Term::app(Term::app(t, Term::numeral(x)), Term::numeral(k));
      Term normed = r.term.subst(r.arg_vars[0].first, Term::numeral(x))
                        .subst(r.arg_vars[1].first, Term::numeral(k));
      uint64_t a = evaluate_with_measure_oracle(orig).value;
      uint64_t b = evaluate_with_measure_oracle(normed).value;
      CHECK(a == b);
    }
  }
}

TEST_CASE("argument built by an outer application gets repackaged behind a fresh oracle") {
  // H doubles the code's value; G(H g) with g a closed type-2 code
  Term h = parse_term(
      "(lam X:((0 -> 0) -> 0) (lam f:(0 -> 0) ((lam v:0 (R0 v (X f) (lam r:0 (lam i:0 (S r))))) "
      "(X f))))");
  // h X f = X f + X f
  Term g = basic_open({1});
  Term t = Term::app(Term::constant(ConstKind::Leb), Term::app(h, g));
  Degree3Result r = normalize_degree3(t);
  REQUIRE(r.occurrences.size() == 1);
  const GOccurrence& occ = r.occurrences[0];
  // the recorded body is the argument applied to the designated oracle
  CHECK(occ.body.free_vars().count(occ.oracle_var));
  // the doubled code denotes the same set, so the measure agrees: check the
  // occurrence argument measures like [<1>]
  CHECK(measure_clopen(occ.argument) == Dyadic(1, 1));
  // observational equality of the whole term on precisions
  for (uint32_t k = 0; k <= 5; ++k)
    CHECK(sem_eval(r.reabstracted(), {k}) == sem_eval(t, {k}));
}

TEST_CASE("normalization preserves evaluation on a corpus with Leb/Eps") {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 15; ++i) {
    Term code = testing::random_set_code(rng, 2);
    // t = lam k. Leb(code) k + Eps(code) k, a type-1 term using both constants
    Term k = Term::var("k", Type::ground());
    Term leb_part = Term::app(Term::app(Term::constant(ConstKind::Leb), code), k);
    Term eps_part = Term::app(Term::app(Term::constant(ConstKind::Eps), code), k);
    Term t = lambda_abstract("k", Type::ground(), tl::apply2(tl::add(), leb_part, eps_part));
    Degree3Result r = normalize_degree3(t);
    CHECK(shape_invariant_holds(r.term));
    for (uint64_t x = 0; x < 7; ++x)
      CHECK(sem_eval(r.reabstracted(), {x}) == sem_eval(t, {x}));
  }
}

TEST_CASE("higher-degree inputs and arguments are rejected") {
  // a type-2 input has degree 2
  CHECK_THROWS_AS(normalize_degree3(basic_open({0})), UnsupportedTerm);
  // a free type-1 variable inside a Leb argument is not eliminable
  Term g = Term::var("g", Type::pure(1));
  Term body = Term::app(Term::var("f!", Type::pure(1)), Term::app(g, Term::numeral(0)));
  Term code = lambda_abstract("f!", Type::pure(1), body);
  Term t = Term::app(Term::constant(ConstKind::Leb), code);
  CHECK_THROWS_AS(normalize_degree3(t), UnsupportedTerm);
}

TEST_CASE("strict mode packs residuals into the oracle") {
  Term t = parse_term("(lam x:0 (Leb (lam f:(0 -> 0) (Cond x (f 0) (f 1)))))");
  Degree3Result r = normalize_degree3(t, ShapeMode::Strict);
  REQUIRE(r.occurrences.size() == 1);
  const GOccurrence& occ = r.occurrences[0];
  REQUIRE(occ.residual_frees.size() == 1);
  // the strict code is closed
  CHECK(occ.strict_code.free_vars().empty());
  // defining equation: strict_code(cons(x, f)) = argument[x](f)
  for (uint64_t x = 0; x < 2; ++x) {
    for (int bits = 0; bits < 4; ++bits) {
      std::vector<uint8_t> bs{(uint8_t)(bits & 1), (uint8_t)(bits >> 1)};
      Term oracle = tl::oracle_term(bs);
      Term packed = tl::apply2(tl::cons_oracle(), Term::numeral(x), oracle);
      uint64_t lhs = evaluate(Term::app(occ.strict_code, packed)).value;
      Term arg_inst = occ.argument.subst(occ.residual_frees[0].first, Term::numeral(x));
      uint64_t rhs = evaluate(Term::app(arg_inst, oracle)).value;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("replace_occurrences: single, identity, nested") {
  // single occurrence: Leb([<0>]) |-> real code of 1/2 gives a Leb-free term
  Term t = Term::app(Term::constant(ConstKind::Leb), basic_open({0}));
  Term replaced = replace_occurrences(t, [](const GOccurrence& occ) {
    REQUIRE(occ.kind == ConstKind::Leb);
    return embed_dyadic(Dyadic(1, 1));
  });
  CHECK(replaced.in_t0_mu());
  for (uint32_t k = 0; k <= 6; ++k)
    CHECK(evaluate(Term::app(replaced, Term::numeral(k))).value == Dyadic(1, 1).floor_scaled(k));

  // identity interpreter: observationally equal output
  Term t2 = parse_term("(lam x:0 ((Leb (lam f:(0 -> 0) (f 0))) x))");
  Term same = replace_occurrences(t2, [](const GOccurrence& occ) {
    return Term::app(Term::constant(occ.kind), occ.argument);
  });
  for (uint64_t x = 0; x < 6; ++x)
    CHECK(sem_eval(same, {x}) == sem_eval(t2, {x}));

  // nested: the outer code asks the inner measure for its first bit;
  // replacing innermost-first lets the outer interpreter see a Leb-free
  // argument
  Term inner = Term::app(Term::constant(ConstKind::Leb), basic_open({0}));  // 1/2
  Term f = Term::var("f", Type::pure(1));
  // outer set code: f |-> f(inner(1)), i.e. queries index floor(1/2*2) = 1
  Term outer_code =
      lambda_abstract("f", Type::pure(1), Term::app(f, Term::app(inner, Term::numeral(1))));
  Term nested = Term::app(Term::constant(ConstKind::Leb), outer_code);
  int calls = 0;
  Term done = replace_occurrences(nested, [&](const GOccurrence& occ) -> Term {
    ++calls;
    if (calls == 1) {
      // innermost first: the inner [<0>] measure
      CHECK(occ.argument == basic_open({0}));
      return embed_dyadic(Dyadic(1, 1));
    }
    // outer: the argument must be Leb-free now
    CHECK(occ.argument.in_t0_mu());
    return embed_dyadic(measure_clopen(occ.argument));
  });
  CHECK(calls == 2);
  CHECK(done.in_t0_mu());
  // outer set is {f : f(1) = 0}, measure 1/2: check the real code at k=2
  CHECK(evaluate(Term::app(done, Term::numeral(2))).value == 2);

  // two disjoint occurrences replaced by different constants both land
  Term two = tl::apply2(
      tl::add(),
      Term::app(Term::app(Term::constant(ConstKind::Leb), basic_open({0})), Term::numeral(3)),
      Term::app(Term::app(Term::constant(ConstKind::Leb), basic_open({1, 1})), Term::numeral(3)));
  Term both = replace_occurrences(two, [&](const GOccurrence& occ) {
    return embed_dyadic(measure_clopen(occ.argument));
  });
  CHECK(both.in_t0_mu());
  CHECK(evaluate(both).value == 4 + 2);  // floor(1/2*8) + floor(1/4*8)
}

TEST_CASE("replacement guards: type and free-variable checks") {
  Term t = Term::app(Term::constant(ConstKind::Leb), basic_open({0}));
  CHECK_THROWS_AS(replace_occurrences(t, [](const GOccurrence&) {
    return Term::numeral(0);  // type 0, site wants type 1
  }), TypeMismatch);
  CHECK_THROWS_AS(replace_occurrences(t, [](const GOccurrence&) {
    return Term::var("zzz", Type::pure(1));  // dangling free
  }), DanglingFreeVariable);
}

TEST_CASE("independence: replacing one site leaves the other subterm intact") {
  Term site_a = Term::app(Term::constant(ConstKind::Leb), basic_open({0}));
  Term site_b = Term::app(Term::constant(ConstKind::Eps), basic_open({1}));
  Term t = tl::apply2(tl::add(), Term::app(site_a, Term::numeral(1)),
                      Term::app(site_b, Term::numeral(0)));
  Degree3Result r = normalize_degree3(t);
  REQUIRE(r.occurrences.size() == 2);
  // replace only the Leb site, keep Eps by identity
  Term partial = replace_occurrences(t, [](const GOccurrence& occ) -> Term {
    if (occ.kind == ConstKind::Leb) return embed_dyadic(Dyadic(1, 1));
    return Term::app(Term::constant(occ.kind), occ.argument);
  });
  CHECK(partial.mentions_const(ConstKind::Eps));
  CHECK(!partial.mentions_const(ConstKind::Leb));
  // and the value is unchanged under the semantic oracle
  CHECK(evaluate_with_measure_oracle(partial).value == evaluate_with_measure_oracle(t).value);
}
