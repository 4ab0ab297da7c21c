#include "leb/measure.hpp"

#include <algorithm>

#include "leb/error.hpp"
#include "leb/termlib.hpp"

namespace leb {

namespace {

const Type O = Type::ground();
const Type T1 = Type::pure(1);
const Type T2 = Type::pure(2);

Term fvar() { return Term::var("f", T1); }

Term close_over_f(const Term& body) { return lambda_abstract("f", T1, body); }

Term char_of(const Term& set_code) { return Term::app(set_code, fvar()); }

}  // namespace

Term set_empty() {
  static const Term t = Term::app(Term::constant(ConstKind::Pi, {O, T1}), Term::numeral(1));
  return t;
}

Term set_full() {
  static const Term t = Term::app(Term::constant(ConstKind::Pi, {O, T1}), Term::numeral(0));
  return t;
}

Term basic_open(const std::vector<uint8_t>& bits) {
  // a chain of set-level conditionals: bit i is checked and, only on a match,
  // the rest of the code is applied. Selecting between the two closed
  // continuation codes before applying them keeps the mismatch branch
  // unevaluated, so the branch tree stays linear in |s|.
  Term next = set_full();
  for (size_t i = bits.size(); i-- > 0;) {
    Term f = fvar();
    Term read = Term::app(tl::sg(), Term::app(f, Term::numeral(i)));
    Term mismatch = tl::apply2(tl::absdiff(), read, Term::numeral(bits[i]));
    Term select = Term::app(
        Term::app(Term::app(Term::constant(ConstKind::Cond, {T2}), mismatch), next),
        set_empty());
    next = close_over_f(Term::app(select, f));
  }
  return next;
}

Term set_union(const Term& x, const Term& y) {
  return close_over_f(tl::apply2(tl::tmin(), char_of(x), char_of(y)));
}

Term set_intersection(const Term& x, const Term& y) {
  return close_over_f(tl::apply2(tl::tmax(), char_of(x), char_of(y)));
}

Term set_complement(const Term& x) {
  return close_over_f(Term::app(tl::cosg(), char_of(x)));
}

Term set_difference(const Term& x, const Term& y) {
  return set_intersection(x, set_complement(y));
}

Term sg_normalize(const Term& x) {
  Term f = fvar();
  Term n = Term::var("n", O);
  Term inner = lambda_abstract("n", O, Term::app(tl::sg(), Term::app(f, n)));
  return close_over_f(Term::app(tl::sg(), Term::app(x, inner)));
}

std::vector<Term> disjointify(const std::vector<Term>& xs) {
  std::vector<Term> out;
  std::optional<Term> seen;
  for (const Term& x : xs) {
    if (!seen) {
      out.push_back(x);
      seen = x;
    } else {
      out.push_back(set_difference(x, *seen));
      seen = set_union(*seen, x);
    }
  }
  return out;
}

Term prefix_union(const Term& family, const Term& count) {
  // lam f. R0 count 1 (lam acc j. min(acc, F j f))
  Term f = fvar();
  Term acc = Term::var("acc", O), j = Term::var("j", O);
  Term member = Term::app(Term::app(family, j), f);
  Term step = lambda_abstract(
      "acc", O, lambda_abstract("j", O, tl::apply2(tl::tmin(), acc, member)));
  Term loop = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Rec0), count), Term::numeral(1)), step);
  return close_over_f(loop);
}

Term disjointify_indexed(const Term& family) {
  if (family.type() != Type::arrow(O, T2))
    throw Error("disjointify_indexed: family must have type (0 -> 2-type)");
  // lam i f. max(F i f, cosg(prefix_union(F, i) f))
  Term i = Term::var("i", O);
  Term f = fvar();
  Term in_xi = Term::app(Term::app(family, i), f);
  Term in_prefix = Term::app(prefix_union(family, i), f);
  Term body = tl::apply2(tl::tmax(), in_xi, Term::app(tl::cosg(), in_prefix));
  return lambda_abstract("i", O, close_over_f(body));
}

Term countable_union(const Term& family) {
  if (family.type() != Type::arrow(O, T2))
    throw Error("countable_union: family must have type (0 -> 2-type)");
  Term f = fvar();
  Term n = Term::var("n", O);
  Term chi_n = lambda_abstract("n", O, Term::app(Term::app(family, n), f));
  Term index = Term::app(Term::constant(ConstKind::Mu), chi_n);
  return close_over_f(Term::app(Term::app(family, index), f));
}

Dyadic measure_clopen(const Term& set_code, const EvalLimits& lim) {
  BranchTree tree = branch_evaluate(set_code, lim);
  Dyadic m = Dyadic::zero();
  for (const auto* leaf : tree.leaves())
    if (leaf->value == 0) m = m + Dyadic::pow2_neg((uint32_t)leaf->constraints.size());
  return m;
}

Dyadic measure_bruteforce(const Term& set_code, uint32_t k, const EvalLimits& lim) {
  if (k > 24) throw Error("measure_bruteforce: 2^k enumeration too large");
  Term body = Term::app(set_code, fvar());
  uint64_t count = 0;
  for (uint64_t s = 0; s < (uint64_t(1) << k); ++s) {
    std::vector<uint8_t> bits(k);
    for (uint32_t i = 0; i < k; ++i) bits[i] = (s >> i) & 1;
    Env env;
    env.assign_oracle("f", Oracle::from_bits(bits));
    if (evaluate(body, env, lim).value == 0) ++count;
  }
  return Dyadic(count, k);
}

ArithMeasure measure_arithmetical(const ArithSetFamily& fam,
                                  const std::vector<uint64_t>& bounds,
                                  const EvalLimits& lim) {
  size_t arity = fam.signature.size();
  if (bounds.size() != arity)
    throw Error("measure_arithmetical: bounds/signature arity mismatch");
  // expected family type: 0 -> ... -> 0 -> T2
  Type expect = T2;
  for (size_t i = 0; i < arity; ++i) expect = Type::arrow(O, expect);
  if (fam.family.type() != expect)
    throw Error("measure_arithmetical: family type " + fam.family.type().to_string() +
                " does not match signature arity " + std::to_string(arity));
  if (!fam.family.in_t0_mu()) throw UnsupportedConstant("Leb/Eps inside an arithmetical family");

  // X''(f) = fold_{n1<m1} fold_{n2<m2} ... chi(n1,..,ni,f), min for unions,
  // max for intersections, built with R0 loops over numerals.
  Term f = fvar();
  std::function<Term(size_t, std::vector<Term>&)> build = [&](size_t level,
                                                              std::vector<Term>& idx) -> Term {
    if (level == arity) {
      Term chi = fam.family;
      for (const Term& ix : idx) chi = Term::app(chi, ix);
      return Term::app(chi, f);
    }
    bool is_union = fam.signature[level] == Quant::Union;
    std::string vn = "n" + std::to_string(level);
    Term var = Term::var(vn, O);
    idx.push_back(var);
    Term inner = build(level + 1, idx);
    idx.pop_back();
    Term acc = Term::var("acc" + std::to_string(level), O);
    Term step = lambda_abstract(
        "acc" + std::to_string(level), O,
        lambda_abstract(vn, O,
                        tl::apply2(is_union ? tl::tmin() : tl::tmax(), acc, inner)));
    Term start = Term::numeral(is_union ? 1 : 0);
    return Term::app(
        Term::app(Term::app(Term::constant(ConstKind::Rec0), Term::numeral(bounds[level])),
                  start),
        step);
  };
  std::vector<Term> idx;
  Term truncation = close_over_f(build(0, idx));

  ArithMeasure out;
  out.truncation = truncation;
  out.value = measure_clopen(truncation, lim);
  bool all_union = std::all_of(fam.signature.begin(), fam.signature.end(),
                               [](Quant q) { return q == Quant::Union; });
  bool all_inter = std::all_of(fam.signature.begin(), fam.signature.end(),
                               [](Quant q) { return q == Quant::Inter; });
  if (arity > 0 && all_union)
    out.cert = ArithMeasure::Cert::LowerBound;
  else if (arity > 0 && all_inter)
    out.cert = ArithMeasure::Cert::UpperBound;
  return out;
}

Term epsilon_select(const Term& set_code, const EvalLimits& lim) {
  BranchTree tree = branch_evaluate(set_code, lim);
  uint64_t k = tree.depth_bound();
  std::optional<std::vector<uint8_t>> best;
  for (const auto* leaf : tree.leaves()) {
    if (leaf->value != 0) continue;
    std::vector<uint8_t> s(k, 0);
    for (auto& [ix, bit] : leaf->constraints) s[ix] = bit;
    if (!best || std::lexicographical_compare(s.begin(), s.end(), best->begin(), best->end()))
      best = std::move(s);
  }
  if (!best) return tl::const_fn(0);
  // drop trailing zeros: the term pads with 0 anyway
  while (!best->empty() && best->back() == 0) best->pop_back();
  if (best->empty()) return tl::const_fn(0);
  return tl::oracle_term(*best);
}

DyadicInterval cantor_to_unit(const std::vector<uint8_t>& prefix) {
  Dyadic lo = Dyadic::zero();
  for (size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i]) lo = lo + Dyadic::pow2_neg((uint32_t)i + 1);
  return {lo, lo + Dyadic::pow2_neg((uint32_t)prefix.size())};
}

Term embed_dyadic(const Dyadic& d) {
  // k |-> floor(d * 2^k): for k >= exp double num (k - exp) times, otherwise
  // halve it (exp - k) times. Both arms stay cheap under call-by-value.
  Term k = Term::var("k", O);
  Term num = Term::numeral(d.num());
  Term e = Term::numeral(d.exp());
  Term up = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Rec0), tl::apply2(tl::monus(), k, e)), num),
      lambda_abstract("r", O,
                      lambda_abstract("i", O,
                                      tl::apply2(tl::add(), Term::var("r", O),
                                                 Term::var("r", O)))));
  Term down = tl::apply2(tl::div_pow2(), num, tl::apply2(tl::monus(), e, k));
  Term guard = tl::apply2(tl::monus(), e, k);  // 0 iff e <= k
  Term body = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), guard), up), down);
  return lambda_abstract("k", O, body);
}

BranchTree branch_explore_value(const ValueRef& set_code, const EvalLimits& lim) {
  BranchAttempt attempt = [&set_code, lim](const CellFn& oracle) -> EvalResult {
    EvalCtx ctx;
    ctx.limits = lim;
    ctx.steps_left = lim.max_steps;
    ValueRef f = Value::fn([&oracle](const ValueRef& i, EvalCtx&) {
      return Value::nat(oracle(force_nat(i)));
    });
    ValueRef v = apply_value(set_code, f, ctx);
    return {force_nat(v), ctx.incomplete};
  };
  return branch_explore(attempt);
}

namespace {

// The semantic interpretation of Leb/Eps on set-code values. Measures and
// selections are computed eagerly so results are deterministic functions.
ValueRef interp_g(ConstKind kind, const ValueRef& set_code, EvalCtx& ctx) {
  EvalLimits lim = ctx.limits;
  BranchTree tree = branch_explore_value(set_code, lim);
  if (kind == ConstKind::Leb) {
    Dyadic m = Dyadic::zero();
    for (const auto* leaf : tree.leaves())
      if (leaf->value == 0) m = m + Dyadic::pow2_neg((uint32_t)leaf->constraints.size());
    return Value::fn([m](const ValueRef& kv, EvalCtx&) {
      return Value::nat(m.floor_scaled((uint32_t)force_nat(kv)));
    });
  }
  // Eps
  uint64_t k = tree.depth_bound();
  std::optional<std::vector<uint8_t>> best;
  for (const auto* leaf : tree.leaves()) {
    if (leaf->value != 0) continue;
    std::vector<uint8_t> s(k, 0);
    for (auto& [ix, bit] : leaf->constraints) s[ix] = bit;
    if (!best || std::lexicographical_compare(s.begin(), s.end(), best->begin(), best->end()))
      best = std::move(s);
  }
  Oracle point = best ? Oracle::from_bits(*best) : Oracle::zeros();
  return Value::fn([point](const ValueRef& nv, EvalCtx&) {
    return Value::nat(point.at(force_nat(nv)));
  });
}

}  // namespace

const GInterp& measure_oracle_interp() {
  static const GInterp interp = interp_g;
  return interp;
}

EvalResult evaluate_with_measure_oracle(const Term& t, const Env& env, const EvalLimits& lim) {
  return evaluate(t, env, lim, &measure_oracle_interp());
}

bool is_member(const Term& set_code, const Oracle& point, const EvalLimits& lim) {
  Term body = Term::app(set_code, fvar());
  Env env;
  env.assign_oracle("f", point);
  return evaluate(body, env, lim).value == 0;
}

}  // namespace leb
