#include "leb/logic.hpp"

#include <functional>

#include "leb/error.hpp"
#include "leb/measure.hpp"
#include "leb/termlib.hpp"

namespace leb {

namespace {
const Type O = Type::ground();
}

Formula ext_eq(const Type& rho, const Term& x, const Term& y) {
  if (x.type() != rho || y.type() != rho)
    throw TypeMismatch("ext_eq arguments must have the stated type");
  std::function<Formula(const Type&, const Term&, const Term&, int)> go =
      [&](const Type& t, const Term& a, const Term& b, int depth) -> Formula {
    if (t.is_ground()) return Formula::prime(a, b);
    std::string un = "u" + std::to_string(depth);
    std::string vn = "v" + std::to_string(depth);
    Term u = Term::var(un, t.arg());
    Term v = Term::var(vn, t.arg());
    Formula hyp = go(t.arg(), u, v, depth + 1);
    Formula c1 = go(t.res(), Term::app(a, u), Term::app(a, v), depth + 1);
    Formula c2 = go(t.res(), Term::app(a, u), Term::app(b, v), depth + 1);
    return Formula::forall(
        un, t.arg(),
        Formula::forall(vn, t.arg(), Formula::implies(hyp, Formula::land(c1, c2))));
  };
  return go(rho, x, y, 0);
}

Formula elim_ext_translate(const Formula& a) {
  switch (a.tag()) {
    case Formula::Tag::Prime: return a;
    case Formula::Tag::Not: return Formula::lnot(elim_ext_translate(a.left()));
    case Formula::Tag::And:
      return Formula::land(elim_ext_translate(a.left()), elim_ext_translate(a.right()));
    case Formula::Tag::Or:
      return Formula::lor(elim_ext_translate(a.left()), elim_ext_translate(a.right()));
    case Formula::Tag::Implies:
      return Formula::implies(elim_ext_translate(a.left()), elim_ext_translate(a.right()));
    case Formula::Tag::Forall: {
      Term x = Term::var(a.qvar(), a.qtype());
      return Formula::forall(a.qvar(), a.qtype(),
                             Formula::implies(ext_eq(a.qtype(), x, x),
                                              elim_ext_translate(a.left())));
    }
    case Formula::Tag::Exists: {
      Term x = Term::var(a.qvar(), a.qtype());
      return Formula::exists(a.qvar(), a.qtype(),
                             Formula::land(ext_eq(a.qtype(), x, x),
                                           elim_ext_translate(a.left())));
    }
  }
  throw Error("unreachable");
}

Formula erase_relativizers(const Formula& a) {
  switch (a.tag()) {
    case Formula::Tag::Prime: return a;
    case Formula::Tag::Not: return Formula::lnot(erase_relativizers(a.left()));
    case Formula::Tag::And:
      return Formula::land(erase_relativizers(a.left()), erase_relativizers(a.right()));
    case Formula::Tag::Or:
      return Formula::lor(erase_relativizers(a.left()), erase_relativizers(a.right()));
    case Formula::Tag::Implies:
      return Formula::implies(erase_relativizers(a.left()), erase_relativizers(a.right()));
    case Formula::Tag::Forall: {
      Formula body = a.left();
      Term x = Term::var(a.qvar(), a.qtype());
      if (body.tag() == Formula::Tag::Implies && body.left() == ext_eq(a.qtype(), x, x))
        return Formula::forall(a.qvar(), a.qtype(), erase_relativizers(body.right()));
      return Formula::forall(a.qvar(), a.qtype(), erase_relativizers(body));
    }
    case Formula::Tag::Exists: {
      Formula body = a.left();
      Term x = Term::var(a.qvar(), a.qtype());
      if (body.tag() == Formula::Tag::And && body.left() == ext_eq(a.qtype(), x, x))
        return Formula::exists(a.qvar(), a.qtype(), erase_relativizers(body.right()));
      return Formula::exists(a.qvar(), a.qtype(), erase_relativizers(body));
    }
  }
  throw Error("unreachable");
}

Term char_term(const Formula& qf) {
  switch (qf.tag()) {
    case Formula::Tag::Prime: return tl::apply2(tl::absdiff(), qf.lhs(), qf.rhs());
    case Formula::Tag::Not: return Term::app(tl::cosg(), char_term(qf.left()));
    case Formula::Tag::And:
      return tl::apply2(tl::tmax(), char_term(qf.left()), char_term(qf.right()));
    case Formula::Tag::Or:
      return tl::apply2(tl::tmin(), char_term(qf.left()), char_term(qf.right()));
    case Formula::Tag::Implies:
      return tl::apply2(tl::tmin(), Term::app(tl::cosg(), char_term(qf.left())),
                        char_term(qf.right()));
    case Formula::Tag::Forall:
    case Formula::Tag::Exists:
      throw NonArithmetical("char_term needs a quantifier-free formula");
  }
  throw Error("unreachable");
}

Formula qf_collapse(const Formula& a) {
  switch (a.tag()) {
    case Formula::Tag::Prime: return a;
    case Formula::Tag::Not: return Formula::lnot(qf_collapse(a.left()));
    case Formula::Tag::And: return Formula::land(qf_collapse(a.left()), qf_collapse(a.right()));
    case Formula::Tag::Or: return Formula::lor(qf_collapse(a.left()), qf_collapse(a.right()));
    case Formula::Tag::Implies:
      return Formula::implies(qf_collapse(a.left()), qf_collapse(a.right()));
    case Formula::Tag::Exists: {
      if (!a.qtype().is_ground())
        throw NonArithmetical("qf_collapse: quantifier over " + a.qtype().to_string());
      Formula body = qf_collapse(a.left());
      Term c = char_term(body);
      Term searched = Term::app(Term::constant(ConstKind::Mu),
                                lambda_abstract(a.qvar(), O, c));
      return Formula::prime(c.subst(a.qvar(), searched), Term::numeral(0));
    }
    case Formula::Tag::Forall: {
      if (!a.qtype().is_ground())
        throw NonArithmetical("qf_collapse: quantifier over " + a.qtype().to_string());
      Formula body = qf_collapse(a.left());
      // forall n A  <=>  no n with ~A: search the complement characteristic
      Term s = Term::app(tl::cosg(), char_term(body));
      Term searched = Term::app(Term::constant(ConstKind::Mu),
                                lambda_abstract(a.qvar(), O, s));
      return Formula::lnot(Formula::prime(s.subst(a.qvar(), searched), Term::numeral(0)));
    }
  }
  throw Error("unreachable");
}

// --------------------------------------------------------------- Dialectica

std::string DialecticaShape::to_string() const {
  std::string s = "exists";
  if (exists_vars.empty()) s += " -";
  for (auto& [n, t] : exists_vars) s += " " + n + ":" + t.to_string();
  s += " forall";
  if (forall_vars.empty()) s += " -";
  for (auto& [n, t] : forall_vars) s += " " + n + ":" + t.to_string();
  s += " . " + matrix.to_string();
  return s;
}

namespace {

struct PrefixEntry {
  bool universal;
  std::string var;
  Type type;
};

struct Prenex {
  std::vector<PrefixEntry> prefix;
  Formula matrix;
};

struct NameGen {
  int next = 0;
  std::string fresh(const std::string& base) { return base + "_" + std::to_string(next++); }
};

// Classical prenexing; disjunctions of quantified formulas go through the
// type-0 flag variable first.
Prenex prenex(const Formula& f, NameGen& names, bool positive);

Prenex prenex_rename(const Formula& f, NameGen& names, bool positive,
                     std::vector<PrefixEntry>& used) {
  Prenex p = prenex(f, names, positive);
  // rename prefix variables that collide with ones already collected
  for (auto& e : p.prefix) {
    bool clash = false;
    for (auto& u : used)
      if (u.var == e.var) clash = true;
    if (clash) {
      std::string nv = names.fresh(e.var);
      p.matrix = p.matrix.subst_term(e.var, Term::var(nv, e.type));
      for (auto& e2 : p.prefix)
        if (e2.var == e.var) e2.var = nv;
      e.var = nv;
    }
    used.push_back(e);
  }
  return p;
}

// Interleaves two prefixes advancing universals over existentials of the
// other side (variables from different sides are independent, so the swap is
// classically valid; same-side order is preserved).
std::vector<PrefixEntry> merge_prefixes(const std::vector<PrefixEntry>& a,
                                        const std::vector<PrefixEntry>& b) {
  std::vector<PrefixEntry> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    bool took = false;
    while (i < a.size() && a[i].universal) {
      out.push_back(a[i++]);
      took = true;
    }
    while (j < b.size() && b[j].universal) {
      out.push_back(b[j++]);
      took = true;
    }
    if (took) continue;
    if (i < a.size())
      out.push_back(a[i++]);
    else if (j < b.size())
      out.push_back(b[j++]);
  }
  return out;
}

Prenex prenex(const Formula& f, NameGen& names, bool positive) {
  switch (f.tag()) {
    case Formula::Tag::Prime: return {{}, f};
    case Formula::Tag::Not: {
      Prenex a = prenex(f.left(), names, !positive);
      for (auto& e : a.prefix) e.universal = !e.universal;
      a.matrix = Formula::lnot(a.matrix);
      return a;
    }
    case Formula::Tag::And: {
      std::vector<PrefixEntry> used;
      Prenex a = prenex_rename(f.left(), names, positive, used);
      Prenex b = prenex_rename(f.right(), names, positive, used);
      Prenex out;
      out.prefix = merge_prefixes(a.prefix, b.prefix);
      out.matrix = Formula::land(a.matrix, b.matrix);
      return out;
    }
    case Formula::Tag::Or: {
      Formula l = f.left(), r = f.right();
      if (!l.is_quantifier_free() || !r.is_quantifier_free()) {
        // standard flag variable, placed innermost: the two arms are prenexed
        // first, then z is chosen after all their quantifiers
        std::string z = names.fresh("z");
        Term zv = Term::var(z, O);
        Formula zeq = Formula::prime(zv, Term::numeral(0));
        Formula flagged = Formula::land(Formula::implies(zeq, l),
                                        Formula::implies(Formula::lnot(zeq), r));
        Prenex p = prenex(flagged, names, positive);
        p.prefix.push_back(PrefixEntry{false, z, O});
        return p;
      }
      return {{}, f};
    }
    case Formula::Tag::Implies: {
      std::vector<PrefixEntry> used;
      Prenex a = prenex_rename(f.left(), names, !positive, used);
      Prenex b = prenex_rename(f.right(), names, positive, used);
      for (auto& e : a.prefix) e.universal = !e.universal;
      Prenex out;
      out.prefix = merge_prefixes(a.prefix, b.prefix);
      out.matrix = Formula::implies(a.matrix, b.matrix);
      return out;
    }
    case Formula::Tag::Forall:
    case Formula::Tag::Exists: {
      Prenex body = prenex(f.left(), names, positive);
      PrefixEntry e{f.tag() == Formula::Tag::Forall, f.qvar(), f.qtype()};
      for (auto& inner : body.prefix)
        if (inner.var == e.var) {
          std::string nv = names.fresh(e.var);
          body.matrix = body.matrix.subst_term(e.var, Term::var(nv, e.type));
          e.var = nv;
          break;
        }
      body.prefix.insert(body.prefix.begin(), e);
      return body;
    }
  }
  throw Error("unreachable");
}

Type curried(const std::vector<std::pair<std::string, Type>>& args, const Type& result) {
  Type t = result;
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = Type::arrow(it->second, t);
  return t;
}

Term applied(const Term& head, const std::vector<std::pair<std::string, Type>>& args) {
  Term t = head;
  for (auto& [n, ty] : args) t = Term::app(t, Term::var(n, ty));
  return t;
}

}  // namespace

DialecticaShape nd_interpret(const Formula& f) {
  NameGen names;
  Prenex p = prenex(f, names, true);

  // fold the prefix right-to-left over an (forall y, exists x, matrix) shape
  std::vector<std::pair<std::string, Type>> ys, xs;
  Formula matrix = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) {
    if (!it->universal) {
      if (ys.empty()) {
        xs.insert(xs.begin(), {it->var, it->type});
        continue;
      }
      // Herbrand block: the existing existentials become functionals of the
      // universals, the universals become functionals picking counterexamples
      std::vector<std::pair<std::string, Type>> new_xs, new_ys;
      new_xs.emplace_back(it->var, it->type);
      std::vector<std::pair<std::string, Type>> hats;
      for (auto& [xn, xt] : xs) hats.emplace_back(names.fresh(xn), curried(ys, xt));
      std::vector<std::pair<std::string, Type>> gs;
      {
        std::vector<std::pair<std::string, Type>> g_args;
        g_args.emplace_back(it->var, it->type);
        for (auto& h : hats) g_args.push_back(h);
        for (auto& [yn, yt] : ys) gs.emplace_back(names.fresh(yn), curried(g_args, yt));
      }
      // y_i := G_i(z, hats); x_j := hat_j(y-replacements)
      std::vector<Term> y_repl;
      for (size_t i = 0; i < ys.size(); ++i) {
        Term g = Term::var(gs[i].first, gs[i].second);
        g = Term::app(g, Term::var(it->var, it->type));
        for (auto& h : hats) g = Term::app(g, Term::var(h.first, h.second));
        y_repl.push_back(g);
      }
      for (size_t i = 0; i < ys.size(); ++i) matrix = matrix.subst_term(ys[i].first, y_repl[i]);
      for (size_t j = 0; j < xs.size(); ++j) {
        Term h = Term::var(hats[j].first, hats[j].second);
        for (auto& yr : y_repl) h = Term::app(h, yr);
        matrix = matrix.subst_term(xs[j].first, h);
      }
      for (auto& h : hats) new_xs.push_back(h);
      for (auto& g : gs) new_ys.push_back(g);
      xs = new_xs;
      ys = new_ys;
    } else {
      ys.insert(ys.begin(), {it->var, it->type});
    }
  }

  // skolemize: every existential becomes a functional of all universals
  DialecticaShape out;
  out.forall_vars = ys;
  for (auto& [xn, xt] : xs) {
    std::string hn = xn;  // keep the source name where possible
    Type ht = curried(ys, xt);
    out.exists_vars.emplace_back(hn, ht);
    matrix = matrix.subst_term(xn, applied(Term::var(hn, ht), ys));
  }
  out.matrix = matrix;
  return out;
}

// ------------------------------------------------------- measure axiom

Formula real_eq(const Term& a, const Term& b) {
  if (a.type() != Type::pure(1) || b.type() != Type::pure(1))
    throw TypeMismatch("real_eq expects type-1 real codes");
  Term k = Term::var("k!", O);
  Term gap = tl::apply2(tl::monus(),
                        tl::apply2(tl::absdiff(), Term::app(a, k), Term::app(b, k)),
                        Term::numeral(1));
  return qf_collapse(Formula::forall("k!", O, Formula::prime(gap, Term::numeral(0))));
}

namespace {

Term measure_x_var() { return Term::var("X", Type::pure(2)); }

// the slice views of the one type-2 argument
Term slice_set() {
  // lam f. X (cons 0 f)
  Term f = Term::var("f!", Type::pure(1));
  Term coded = tl::apply2(tl::cons_oracle(), Term::numeral(0), f);
  return lambda_abstract("f!", Type::pure(1), Term::app(measure_x_var(), coded));
}

Term slice_family() {
  // lam i f. X (cons (S i) f)
  Term f = Term::var("f!", Type::pure(1));
  Term i = Term::var("i!", O);
  Term coded = tl::apply2(tl::cons_oracle(), Term::app(Term::constant(ConstKind::Succ), i), f);
  return lambda_abstract(
      "i!", O, lambda_abstract("f!", Type::pure(1), Term::app(measure_x_var(), coded)));
}

Term leb_of(const Term& set) { return Term::app(Term::constant(ConstKind::Leb), set); }

Formula conjunct_nonneg_selector() {
  Term xs = slice_set();
  // non-negativity: forall k. 0 - Leb(X)(k) = 0, collapsed
  Term k = Term::var("k!", O);
  Term lk = Term::app(leb_of(xs), k);
  Formula nonneg = qf_collapse(Formula::forall(
      "k!", O, Formula::prime(tl::apply2(tl::monus(), Term::numeral(0), lk), Term::numeral(0))));
  // X(Eps(X)) != 0 -> Leb(X) = 0
  Term eps_point = Term::app(Term::constant(ConstKind::Eps), xs);
  Formula empty_hyp = Formula::lnot(Formula::prime(Term::app(xs, eps_point), Term::numeral(0)));
  Formula zero = real_eq(leb_of(xs), embed_dyadic(Dyadic::zero()));
  return Formula::land(nonneg, Formula::implies(empty_hyp, zero));
}

Formula conjunct_additivity() {
  Term fam = slice_family();
  Term disj = disjointify_indexed(fam);
  Term m = Term::var("m!", O);
  Term union_m = prefix_union(disj, m);
  // partial sums at precision k + m, then divide by 2^m: the scaled floor
  // codes add up with error below one
  Term k = Term::var("k!", O);
  Term acc = Term::var("acc!", O), i = Term::var("i!", O);
  Term leb_i = leb_of(Term::app(disj, i));
  Term summand = Term::app(leb_i, tl::apply2(tl::add(), k, m));
  Term step = lambda_abstract("acc!", O,
                              lambda_abstract("i!", O, tl::apply2(tl::add(), acc, summand)));
  Term series =
      Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), m), Term::numeral(0)), step);
  Term series_code = lambda_abstract("k!", O, tl::apply2(tl::div_pow2(), series, m));
  Formula eq = real_eq(leb_of(union_m), series_code);
  return qf_collapse(Formula::forall("m!", O, eq));
}

Formula conjunct_basic_open() {
  // forall s. Leb([s]) = 2^-lth(s), with [s] decoded from the string code
  Term s = Term::var("s!", O);
  Term f = Term::var("f!", Type::pure(1));
  Term len = Term::app(tl::seq_lth(), s);
  Term acc = Term::var("acc!", O), i = Term::var("i!", O);
  Term read = Term::app(tl::sg(), Term::app(f, i));
  Term want = tl::apply2(tl::seq_get(), s, i);
  Term mism = tl::apply2(tl::absdiff(), read, want);
  Term step =
      lambda_abstract("acc!", O, lambda_abstract("i!", O, tl::apply2(tl::tmax(), acc, mism)));
  Term chi = Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), len),
                                 Term::numeral(0)),
                       step);
  Term basic = lambda_abstract("f!", Type::pure(1), chi);
  // 2^-l as a real code: k |-> 2^k div 2^l
  Term kk = Term::var("k!", O);
  Term pw = lambda_abstract(
      "k!", O, tl::apply2(tl::div_pow2(), Term::app(tl::pow2(), kk), len));
  Formula eq = real_eq(leb_of(basic), pw);
  return qf_collapse(Formula::forall("s!", O, eq));
}

Formula conjunct_coding() {
  Term xs = slice_set();
  Term f = Term::var("f!", Type::pure(1));
  Term n = Term::var("n!", O);
  // lam f. sg(X f)
  Term outer = lambda_abstract("f!", Type::pure(1), Term::app(tl::sg(), Term::app(xs, f)));
  // lam f. X(lam n. sg(f n))
  Term inner_fn = lambda_abstract("n!", O, Term::app(tl::sg(), Term::app(f, n)));
  Term inner = lambda_abstract("f!", Type::pure(1), Term::app(xs, inner_fn));
  return Formula::land(real_eq(leb_of(outer), leb_of(inner)),
                       real_eq(leb_of(inner), leb_of(xs)));
}

}  // namespace

Formula measure_axiom_conjunct(int i) {
  switch (i) {
    case 0: return conjunct_nonneg_selector();
    case 1: return conjunct_additivity();
    case 2: return conjunct_basic_open();
    case 3: return conjunct_coding();
    default: throw Error("measure_axiom_conjunct: index 0..3");
  }
}

Formula skolemize_measure_axiom() {
  return Formula::land(
      Formula::land(conjunct_nonneg_selector(), conjunct_additivity()),
      Formula::land(conjunct_basic_open(), conjunct_coding()));
}

}  // namespace leb
