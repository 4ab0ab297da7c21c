#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "leb/error.hpp"
#include "leb/logic.hpp"
#include "leb/measure.hpp"
#include "leb/parse.hpp"
#include "leb/termlib.hpp"

using namespace leb;

namespace {

const Type O = Type::ground();
const Type T1 = Type::pure(1);
const Type T2 = Type::pure(2);
const Type TL = Type::arrow(T2, T1);  // the type of the measure and selector

std::vector<Type> types_of(const std::vector<std::pair<std::string, Type>>& vs) {
  std::vector<Type> out;
  for (auto& [n, t] : vs) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("ext_eq unfoldings") {
  Term x0 = Term::var("x", O), y0 = Term::var("y", O);
  CHECK(ext_eq(O, x0, y0) == Formula::prime(x0, y0));

  // type 1: forall u,v (u =0 v -> xu =0 xv & xu =0 yv)
  Term x1 = Term::var("x", T1), y1 = Term::var("y", T1);
  Formula e1 = ext_eq(T1, x1, y1);
  REQUIRE(e1.tag() == Formula::Tag::Forall);
  CHECK(e1.qtype() == O);
  Formula inner1 = e1.left();
  REQUIRE(inner1.tag() == Formula::Tag::Forall);
  Formula impl = inner1.left();
  REQUIRE(impl.tag() == Formula::Tag::Implies);
  CHECK(impl.left().is_prime());
  CHECK(impl.right().tag() == Formula::Tag::And);

  // type 2: quantifiers over type-1 u,v, one further unfolding inside
  Term x2 = Term::var("x", T2), y2 = Term::var("y", T2);
  Formula e2 = ext_eq(T2, x2, y2);
  REQUIRE(e2.tag() == Formula::Tag::Forall);
  CHECK(e2.qtype() == T1);
  Formula hyp2 = e2.left().left().left();
  CHECK(hyp2.tag() == Formula::Tag::Forall);  // u =e_1 v unfolds once more

  CHECK_THROWS_AS(ext_eq(T1, x0, y0), TypeMismatch);
}

TEST_CASE("elim_ext_translate") {
  Formula prime = Formula::prime(Term::var("a", O), Term::numeral(0));
  CHECK(elim_ext_translate(prime) == prime);

  // forall f^1 B becomes forall f (f =e f -> B)
  Formula b = Formula::prime(Term::app(Term::var("f", T1), Term::numeral(0)), Term::numeral(0));
  Formula a = Formula::forall("f", T1, b);
  Formula ae = elim_ext_translate(a);
  REQUIRE(ae.tag() == Formula::Tag::Forall);
  Formula body = ae.left();
  REQUIRE(body.tag() == Formula::Tag::Implies);
  CHECK(body.left() == ext_eq(T1, Term::var("f", T1), Term::var("f", T1)));
  CHECK(body.right() == b);

  // quantifier-free formulas pass through unchanged
  Formula qf = Formula::land(prime, Formula::lnot(prime));
  CHECK(elim_ext_translate(qf) == qf);

  // erasing the relativizers recovers the original syntactically
  Formula nested = Formula::exists(
      "g", T1, Formula::implies(Formula::forall("n", O, b), prime));
  CHECK(erase_relativizers(elim_ext_translate(nested)) == nested);
}

TEST_CASE("degree <= 1 witnesses satisfy their relativizers") {
  // x =e x at type 0 and the hereditary condition at type 1 hold for any
  // finite-support oracle, sampled by bounded evaluation
  std::mt19937_64 rng(97);
  for (int i = 0; i < 10; ++i) {
    Env env;
    env.assign_oracle("g", testing::random_oracle(rng, 6, 3));
    Formula rel = ext_eq(T1, Term::var("g", T1), Term::var("g", T1));
    FormulaEval r = eval_formula(rel, env, {}, 24);
    CHECK(r.value);
  }
}

TEST_CASE("qf_collapse: shape and equivalence") {
  // exists n (f n = 0) collapses to a mu-term prime formula
  Formula ex = Formula::exists(
      "n", O, Formula::prime(Term::app(Term::var("f", T1), Term::var("n", O)), Term::numeral(0)));
  Formula c = qf_collapse(ex);
  CHECK(c.is_quantifier_free());
  CHECK(c.is_prime());
  // the collapsed prime mentions Mu
  CHECK(c.lhs().mentions_const(ConstKind::Mu));

  // equivalence on oracles where the search is decided
  std::mt19937_64 rng(101);
  for (int i = 0; i < 20; ++i) {
    Oracle o = testing::random_oracle(rng, 6, 2);
    o.beyond = 0;  // a zero always exists, both sides decided
    Env env;
    env.assign_oracle("f", o);
    CHECK(eval_formula(c, env).value == eval_formula(ex, env, {}, 32).value);
  }

  // quantifier-free input is unchanged
  Formula qf = Formula::prime(Term::var("a", O), Term::numeral(3));
  CHECK(qf_collapse(qf) == qf);

  // nested forall/exists: forall n exists m (|f n - m| = 0), innermost first
  Formula nested = Formula::forall(
      "n", O,
      Formula::exists("m", O,
                      Formula::prime(tl::apply2(tl::absdiff(),
                                                Term::app(Term::var("f", T1), Term::var("n", O)),
                                                Term::var("m", O)),
                                     Term::numeral(0))));
  Formula nc = qf_collapse(nested);
  CHECK(nc.is_quantifier_free());
  for (int i = 0; i < 10; ++i) {
    Oracle o = testing::random_oracle(rng, 5, 3);
    Env env;
    env.assign_oracle("f", o);
    // always true: m := f(n) witnesses; the collapsed form must agree
    FormulaEval r = eval_formula(nc, env, EvalLimits{2000000, 64});
    CHECK(r.value);
  }

  // failing case: exists n (f n = 1) over the all-zeros oracle is false
  Formula ex1 = Formula::exists(
      "n", O, Formula::prime(Term::app(Term::var("f", T1), Term::var("n", O)), Term::numeral(1)));
  Env zero_env;
  zero_env.assign_oracle("f", Oracle::zeros());
  FormulaEval r = eval_formula(qf_collapse(ex1), zero_env, EvalLimits{2000000, 100});
  CHECK(!r.value);

  // quantifiers of type >= 1 are rejected
  Formula bad = Formula::exists("g", T1, qf);
  CHECK_THROWS_AS(qf_collapse(bad), NonArithmetical);
}

namespace {

Formula prime_qf(const char* a, const char* b) {
  return Formula::prime(Term::var(a, O), Term::var(b, O));
}

}  // namespace

TEST_CASE("nd_interpret: ten benchmark shapes") {
  // 1. prime formulas interpret themselves
  {
    DialecticaShape s = nd_interpret(prime_qf("a", "b"));
    CHECK(s.exists_vars.empty());
    CHECK(s.forall_vars.empty());
    CHECK(s.matrix == prime_qf("a", "b"));
  }
  // 2. forall f^1 exists x^0 A  ->  exists F^{0(1)} forall f A(f, Ff)
  {
    Formula f = parse_formula("forall f:(0 -> 0). exists x:0. (f x) = 0");
    DialecticaShape s = nd_interpret(f);
    CHECK(types_of(s.exists_vars) == std::vector<Type>{Type::arrow(T1, O)});
    CHECK(types_of(s.forall_vars) == std::vector<Type>{T1});
    // matrix is A(f, F f)
    REQUIRE(s.matrix.is_prime());
    CHECK(s.matrix.lhs().is_app());
  }
  // 3. exists x^0 A: one existential, nothing universal
  {
    DialecticaShape s = nd_interpret(parse_formula("exists x:0. x = 0"));
    CHECK(types_of(s.exists_vars) == std::vector<Type>{O});
    CHECK(s.forall_vars.empty());
  }
  // 4. forall x^0 A_qf: one universal, nothing existential
  {
    DialecticaShape s = nd_interpret(parse_formula("forall x:0. x = x"));
    CHECK(s.exists_vars.empty());
    CHECK(types_of(s.forall_vars) == std::vector<Type>{O});
  }
  // 5. the prenex shape from the elimination proof:
  //    forall L,E:(2->1), f:1 exists X:2, g:1 (B -> C)
  {
    Formula b = Formula::prime(
        Term::app(Term::var("X", T2), Term::var("f", T1)), Term::numeral(0));
    Formula c = Formula::prime(Term::app(Term::var("g", T1), Term::numeral(0)),
                               Term::numeral(0));
    Formula f = Formula::forall(
        "L", TL,
        Formula::forall(
            "E", TL,
            Formula::forall(
                "f", T1,
                Formula::exists("X", T2, Formula::exists("g", T1, Formula::implies(b, c))))));
    DialecticaShape s = nd_interpret(f);
    Type xhat = Type::arrow(TL, Type::arrow(TL, Type::arrow(T1, T2)));
    Type ghat = Type::arrow(TL, Type::arrow(TL, Type::arrow(T1, T1)));
    CHECK(types_of(s.exists_vars) == std::vector<Type>{xhat, ghat});
    CHECK(types_of(s.forall_vars) == std::vector<Type>{TL, TL, T1});
  }
  // 6. the same shape arrives mechanically from the implication
  //    (exists L,E forall X B) -> (forall f exists g C)
  {
    Formula b = Formula::prime(
        Term::app(Term::var("X", T2), Term::var("f0", T1)), Term::numeral(0));
    Formula lhs = Formula::exists(
        "L", TL, Formula::exists("E", TL, Formula::forall("X", T2, b)));
    Formula c = Formula::prime(Term::app(Term::var("g", T1), Term::numeral(0)),
                               Term::numeral(0));
    Formula rhs = Formula::forall("f", T1, Formula::exists("g", T1, c));
    DialecticaShape s = nd_interpret(Formula::implies(lhs, rhs));
    Type xhat = Type::arrow(TL, Type::arrow(TL, Type::arrow(T1, T2)));
    Type ghat = Type::arrow(TL, Type::arrow(TL, Type::arrow(T1, T1)));
    CHECK(types_of(s.exists_vars) == std::vector<Type>{xhat, ghat});
    CHECK(types_of(s.forall_vars) == std::vector<Type>{TL, TL, T1});
    REQUIRE(s.matrix.tag() == Formula::Tag::Implies);
  }
  // 7. conjunction of two Pi-2 statements: both witnesses become functionals
  //    of both universals
  {
    Formula p1 = parse_formula("forall f:(0 -> 0). exists x:0. (f x) = 0");
    Formula p2 = parse_formula("forall g:(0 -> 0). exists y:0. (g y) = 1");
    DialecticaShape s = nd_interpret(Formula::land(p1, p2));
    Type w = Type::arrow(T1, Type::arrow(T1, O));
    CHECK(types_of(s.exists_vars) == std::vector<Type>{w, w});
    CHECK(types_of(s.forall_vars) == std::vector<Type>{T1, T1});
  }
  // 8. Sigma-2: exists f forall x A gives the no-counterexample shape
  //    exists F:(1(0(1))) forall Y:0(1) A(FY, Y(FY))
  {
    Formula f = parse_formula("exists f:(0 -> 0). forall x:0. (f x) = x");
    DialecticaShape s = nd_interpret(f);
    Type y = Type::arrow(T1, O);
    Type fhat = Type::arrow(y, T1);
    CHECK(types_of(s.exists_vars) == std::vector<Type>{fhat});
    CHECK(types_of(s.forall_vars) == std::vector<Type>{y});
  }
  // 9. disjunction of two existentials picks up the flag variable
  {
    Formula d = Formula::lor(parse_formula("exists x:0. x = 0"),
                             parse_formula("exists y:0. y = 1"));
    DialecticaShape s = nd_interpret(d);
    REQUIRE(s.exists_vars.size() == 3);  // x, y, and the flag
    CHECK(types_of(s.exists_vars) == std::vector<Type>{O, O, O});
    CHECK(s.forall_vars.empty());
    // matrix splits on the flag
    CHECK(s.matrix.tag() == Formula::Tag::And);
  }
  // 10. negated universal: ~forall x A_qf becomes exists x ~A
  {
    DialecticaShape s = nd_interpret(Formula::lnot(parse_formula("forall x:0. x = 0")));
    CHECK(types_of(s.exists_vars) == std::vector<Type>{O});
    CHECK(s.forall_vars.empty());
    CHECK(s.matrix.tag() == Formula::Tag::Not);
  }
}

TEST_CASE("nd_interpret matrix variables are all declared") {
  // every free variable of the matrix is an exists var, a forall var, or a
  // free variable of the input
  Formula f = parse_formula(
      "(exists u:0. forall v:0. (c v) = u) -> (forall g:(0 -> 0). exists w:0. (g w) = u0)");
  DialecticaShape s = nd_interpret(f);
  auto declared = [&](const std::string& n) {
    for (auto& [vn, vt] : s.exists_vars)
      if (vn == n) return true;
    for (auto& [vn, vt] : s.forall_vars)
      if (vn == n) return true;
    return n == "c" || n == "u0";
  };
  for (auto& [n, t] : s.matrix.free_vars()) CHECK(declared(n));
}

TEST_CASE("formula parser and printer round trip") {
  Formula f = parse_formula("forall x:0. (exists y:0. (S x) = y) -> x = x");
  CHECK(parse_formula(f.to_string()) == f);
  Formula g = parse_formula("~(1 = 0) & (0 = 0 | 1 = 1)");
  CHECK(parse_formula(g.to_string()) == g);
  CHECK_THROWS_AS(parse_formula("forall x:0."), ParseError);
  CHECK_THROWS_AS(parse_formula("x ="), ParseError);
}

TEST_CASE("real_eq: equal and separated codes") {
  Formula eq = real_eq(embed_dyadic(Dyadic(1, 1)), embed_dyadic(Dyadic(1, 1)));
  FormulaEval r = eval_formula(eq, {}, EvalLimits{20000000, 12});
  CHECK(r.value);  // the mu search finds no violation (and reports the cutoff)
  CHECK(r.incomplete);

  Formula ne = real_eq(embed_dyadic(Dyadic(1, 1)), embed_dyadic(Dyadic(1, 2)));
  FormulaEval r2 = eval_formula(ne, {}, EvalLimits{20000000, 12});
  CHECK(!r2.value);  // the violation is found, no cutoff
  CHECK(!r2.incomplete);
}

TEST_CASE("measure axiom: selector conjunct on the empty slice") {
  // X := lam g. 1: every slice is empty
  Formula conj = measure_axiom_conjunct(0);
  Env env;
  env.assign_value("X", Value::prim(ConstKind::Pi, {O, T1}));
  // build the constant-1 function value by evaluating the term instead
  Term xterm = Term::app(Term::constant(ConstKind::Pi, {O, T1}), Term::numeral(1));
  EvalCtx ctx;
  ctx.limits = EvalLimits{};
  ctx.steps_left = 1000;
  env.vars["X"] = eval_term(xterm, {}, ctx);
  FormulaEval r = eval_formula(conj, env, EvalLimits{20000000, 12}, 12, &measure_oracle_interp());
  CHECK(r.value);
}

TEST_CASE("measure axiom: basic-open conjunct over small string codes") {
  Formula conj = measure_axiom_conjunct(2);
  // closed formula; the collapsed forall searches string codes within the mu
  // bound and finds no violation
  FormulaEval r = eval_formula(conj, {}, EvalLimits{50000000, 6}, 6, &measure_oracle_interp());
  CHECK(r.value);
}

TEST_CASE("measure axiom: coding conjunct for an unnormalized code") {
  // X(g) = 2 * sg(g 1): the slice set is {f : f(0) = 0} with values {0, 2}
  Term g = Term::var("g", T1);
  Term raw = Term::app(tl::sg(), Term::app(g, Term::numeral(1)));
  Term xterm = lambda_abstract("g", T1, tl::apply2(tl::add(), raw, raw));
  Env env;
  EvalCtx ctx;
  ctx.limits = EvalLimits{};
  ctx.steps_left = 100000;
  env.vars["X"] = eval_term(xterm, {}, ctx);
  Formula conj = measure_axiom_conjunct(3);
  FormulaEval r = eval_formula(conj, env, EvalLimits{50000000, 8}, 8, &measure_oracle_interp());
  CHECK(r.value);
}

TEST_CASE("measure axiom: finite-prefix additivity on a two-set family") {
  // slices: X_1 = [<0>], X_2 = [<1>], everything else empty
  Term g = Term::var("g", T1);
  Term tag = Term::app(g, Term::numeral(0));
  Term tail0 = Term::app(tl::sg(), Term::app(g, Term::numeral(1)));
  Term in0 = tail0;                          // [<0>] on the tail
  Term in1 = Term::app(tl::cosg(), tail0);   // [<1>] on the tail
  // tag = 0: set view (empty); tag = 1: X_1; tag = 2: X_2; else empty
  Term t1 = Term::app(tl::pred(), tag);
  Term t2 = Term::app(tl::pred(), t1);
  Term cond2 = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), t2), in1), Term::numeral(1));
  Term cond1 = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), t1), in0), cond2);
  Term full_body = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), tag), Term::numeral(1)), cond1);
  Term xterm = lambda_abstract("g", T1, full_body);
  Env env;
  EvalCtx ctx;
  ctx.limits = EvalLimits{};
  ctx.steps_left = 100000;
  env.vars["X"] = eval_term(xterm, {}, ctx);
  // the term-level arithmetic in the series code is cubic in the scaled
  // values, so keep the prefix bound small
  Formula conj = measure_axiom_conjunct(1);
  FormulaEval r = eval_formula(conj, env, EvalLimits{100000000, 4}, 4, &measure_oracle_interp());
  CHECK(r.value);
}
