#include "leb/termlib.hpp"

#include "leb/error.hpp"
#include "leb/parse.hpp"

namespace leb {
namespace tl {

namespace {

const Type O = Type::ground();

Term lam(const std::string& v, const Type& t, const Term& body) {
  return lambda_abstract(v, t, body);
}

Term lam0(const std::string& v, const Term& body) { return lam(v, O, body); }

Term rec0(const Term& n, const Term& base, const Term& step) {
  return Term::app(Term::app(Term::app(Term::constant(ConstKind::Rec0), n), base), step);
}

Term cond0(const Term& guard, const Term& then_, const Term& else_) {
  return Term::app(
      Term::app(Term::app(Term::constant(ConstKind::Cond, {O}), guard), then_), else_);
}

Term succ(const Term& t) { return Term::app(Term::constant(ConstKind::Succ), t); }

}  // namespace

const Term& add() {
  static const Term t = parse_term("(lam a:0 (lam b:0 (R0 b a (lam r:0 (lam i:0 (S r))))))");
  return t;
}

const Term& pred() {
  static const Term t = parse_term("(lam a:0 (R0 a 0 (lam r:0 (lam i:0 i))))");
  return t;
}

const Term& monus() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O), r = Term::var("r", O);
    Term step = lam0("r", lam0("i", Term::app(pred(), r)));
    return lam0("a", lam0("b", rec0(b, a, step)));
  }();
  return t;
}

const Term& sg() {
  static const Term t = parse_term("(lam a:0 (R0 a 0 (lam r:0 (lam i:0 1))))");
  return t;
}

const Term& cosg() {
  static const Term t = parse_term("(lam a:0 (R0 a 1 (lam r:0 (lam i:0 0))))");
  return t;
}

const Term& tmin() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O);
    return lam0("a", lam0("b", apply2(monus(), a, apply2(monus(), a, b))));
  }();
  return t;
}

const Term& tmax() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O);
    return lam0("a", lam0("b", apply2(add(), a, apply2(monus(), b, a))));
  }();
  return t;
}

const Term& mul() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O), r = Term::var("r", O);
    Term step = lam0("r", lam0("i", apply2(add(), r, a)));
    return lam0("a", lam0("b", rec0(b, Term::numeral(0), step)));
  }();
  return t;
}

const Term& absdiff() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O);
    return lam0(
        "a", lam0("b", apply2(add(), apply2(monus(), a, b), apply2(monus(), b, a))));
  }();
  return t;
}

const Term& half() {
  // h(0) = 0, h(i+1) = i - h(i)
  static const Term t = [] {
    Term n = Term::var("n", O), r = Term::var("r", O), i = Term::var("i", O);
    Term step = lam0("r", lam0("i", apply2(monus(), i, r)));
    return lam0("n", rec0(n, Term::numeral(0), step));
  }();
  return t;
}

const Term& pow2() {
  static const Term t = [] {
    Term r = Term::var("r", O);
    Term step = lam0("r", lam0("i", apply2(add(), r, r)));
    return lam0("k", rec0(Term::var("k", O), Term::numeral(1), step));
  }();
  return t;
}

const Term& div_pow2() {
  static const Term t = [] {
    Term n = Term::var("n", O), r = Term::var("r", O);
    Term step = lam0("r", lam0("i", Term::app(half(), r)));
    return lam0("n", lam0("j", rec0(Term::var("j", O), n, step)));
  }();
  return t;
}

const Term& mod2() {
  static const Term t = [] {
    Term n = Term::var("n", O);
    Term h = Term::app(half(), n);
    return lam0("n", apply2(monus(), n, apply2(add(), h, h)));
  }();
  return t;
}

const Term& lt_char() {
  static const Term t = [] {
    Term a = Term::var("a", O), b = Term::var("b", O);
    return lam0("a", lam0("b", apply2(monus(), succ(a), b)));
  }();
  return t;
}

const Term& seq_lth() {
  // L = sum over i < s of sg(s div 2^(i+1))
  static const Term t = [] {
    Term s = Term::var("s", O), r = Term::var("r", O), i = Term::var("i", O);
    Term ind = Term::app(sg(), apply2(div_pow2(), s, succ(i)));
    Term step = lam0("r", lam0("i", apply2(add(), r, ind)));
    return lam0("s", rec0(s, Term::numeral(0), step));
  }();
  return t;
}

const Term& seq_get() {
  static const Term t = [] {
    Term s = Term::var("s", O), i = Term::var("i", O);
    return lam0("s", lam0("i", Term::app(mod2(), apply2(div_pow2(), s, i))));
  }();
  return t;
}

uint64_t seq_code(const std::vector<uint8_t>& bits) {
  if (bits.size() > 62) throw Error("bit string too long to code");
  uint64_t code = uint64_t(1) << bits.size();
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) code |= uint64_t(1) << i;
  return code;
}

std::vector<uint8_t> seq_decode(uint64_t code) {
  if (code == 0) throw Error("invalid string code 0");
  int top = 63;
  while (top > 0 && !((code >> top) & 1)) --top;
  std::vector<uint8_t> bits;
  for (int i = 0; i < top; ++i) bits.push_back((code >> i) & 1);
  return bits;
}

const Term& bounded_mu() {
  // state r: 0 = searching, j+1 = found at j; result pred(final state)
  static const Term t = [] {
    Term g = Term::var("g", Type::pure(1));
    Term r = Term::var("r", O), j = Term::var("j", O);
    Term found = cond0(Term::app(g, j), succ(j), Term::numeral(0));
    Term step = lam0("r", lam0("j", cond0(r, found, r)));
    Term loop = rec0(Term::var("m", O), Term::numeral(0), step);
    return lam0("m", lam("g", Type::pure(1), Term::app(pred(), loop)));
  }();
  return t;
}

const Term& cons_oracle() {
  static const Term t = [] {
    Term x = Term::var("x", O);
    Term f = Term::var("f", Type::pure(1));
    Term m = Term::var("m", O);
    Term body = cond0(m, x, Term::app(f, Term::app(pred(), m)));
    return lam0("x", lam("f", Type::pure(1), lam0("m", body)));
  }();
  return t;
}

Term apply2(const Term& f, const Term& a, const Term& b) {
  return Term::app(Term::app(f, a), b);
}

Term oracle_term(const std::vector<uint8_t>& bits) {
  // lam x. Cond(x, b0, Cond(x-1, b1, ... 0)); level i is reached only when
  // x >= i, where the guard x-i decides.
  Term x = Term::var("x", O);
  Term body = Term::numeral(0);
  for (size_t i = bits.size(); i-- > 0;) {
    Term ix = x;
    for (size_t j = 0; j < i; ++j) ix = Term::app(pred(), ix);
    body = cond0(ix, Term::numeral(bits[i]), body);
  }
  return lambda_abstract("x", O, body);
}

Term const_fn(uint64_t value) {
  return Term::app(Term::constant(ConstKind::Pi, {O, O}), Term::numeral(value));
}

uint64_t cantor_pair(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<uint64_t, uint64_t> cantor_unpair(uint64_t n) {
  uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  uint64_t b = n - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace tl
}  // namespace leb
