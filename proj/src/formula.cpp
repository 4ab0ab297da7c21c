#include "leb/formula.hpp"

#include <cctype>
#include <functional>

#include "leb/error.hpp"
#include "leb/parse.hpp"

namespace leb {

Formula::Formula() : Formula(prime(Term::numeral(0), Term::numeral(0))) {}

Formula Formula::prime(Term lhs, Term rhs) {
  if (lhs.type() != Type::ground() || rhs.type() != Type::ground())
    throw IllTyped("prime formulas compare terms of type 0");
  auto n = std::make_shared<Node>();
  n->tag = Tag::Prime;
  n->l = std::move(lhs);
  n->r = std::move(rhs);
  return wrap(n);
}

Formula Formula::lnot(Formula a) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Not;
  n->a = a.node_;
  return wrap(n);
}

Formula Formula::land(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::And;
  n->a = a.node_;
  n->b = b.node_;
  return wrap(n);
}

Formula Formula::lor(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Or;
  n->a = a.node_;
  n->b = b.node_;
  return wrap(n);
}

Formula Formula::implies(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Implies;
  n->a = a.node_;
  n->b = b.node_;
  return wrap(n);
}

Formula Formula::forall(std::string var, Type t, Formula body) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Forall;
  n->var = std::move(var);
  n->var_type = std::move(t);
  n->a = body.node_;
  return wrap(n);
}

Formula Formula::exists(std::string var, Type t, Formula body) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Exists;
  n->var = std::move(var);
  n->var_type = std::move(t);
  n->a = body.node_;
  return wrap(n);
}

const Term& Formula::lhs() const {
  if (!is_prime()) throw Error("lhs on non-prime formula");
  return node_->l;
}
const Term& Formula::rhs() const {
  if (!is_prime()) throw Error("rhs on non-prime formula");
  return node_->r;
}
Formula Formula::left() const {
  if (is_prime()) throw Error("left on prime formula");
  return wrap(node_->a);
}
Formula Formula::right() const {
  if (!node_->b) throw Error("right on unary formula");
  return wrap(node_->b);
}
const std::string& Formula::qvar() const {
  if (!is_quantifier()) throw Error("qvar on non-quantifier");
  return node_->var;
}
const Type& Formula::qtype() const {
  if (!is_quantifier()) throw Error("qtype on non-quantifier");
  return node_->var_type;
}

bool Formula::is_quantifier_free() const {
  switch (tag()) {
    case Tag::Prime: return true;
    case Tag::Not: return left().is_quantifier_free();
    case Tag::And:
    case Tag::Or:
    case Tag::Implies: return left().is_quantifier_free() && right().is_quantifier_free();
    case Tag::Forall:
    case Tag::Exists: return false;
  }
  return false;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (tag() != o.tag()) return false;
  switch (tag()) {
    case Tag::Prime: return lhs() == o.lhs() && rhs() == o.rhs();
    case Tag::Not: return left() == o.left();
    case Tag::And:
    case Tag::Or:
    case Tag::Implies: return left() == o.left() && right() == o.right();
    case Tag::Forall:
    case Tag::Exists:
      return qvar() == o.qvar() && qtype() == o.qtype() && left() == o.left();
  }
  return false;
}

std::map<std::string, Type> Formula::free_vars() const {
  std::map<std::string, Type> out;
  switch (tag()) {
    case Tag::Prime: {
      out = lhs().free_vars();
      auto r = rhs().free_vars();
      out.insert(r.begin(), r.end());
      return out;
    }
    case Tag::Not: return left().free_vars();
    case Tag::And:
    case Tag::Or:
    case Tag::Implies: {
      out = left().free_vars();
      auto r = right().free_vars();
      out.insert(r.begin(), r.end());
      return out;
    }
    case Tag::Forall:
    case Tag::Exists: {
      out = left().free_vars();
      out.erase(qvar());
      return out;
    }
  }
  return out;
}

Formula Formula::subst_term(const std::string& name, const Term& replacement) const {
  switch (tag()) {
    case Tag::Prime: return prime(lhs().subst(name, replacement), rhs().subst(name, replacement));
    case Tag::Not: return lnot(left().subst_term(name, replacement));
    case Tag::And: return land(left().subst_term(name, replacement), right().subst_term(name, replacement));
    case Tag::Or: return lor(left().subst_term(name, replacement), right().subst_term(name, replacement));
    case Tag::Implies:
      return implies(left().subst_term(name, replacement), right().subst_term(name, replacement));
    case Tag::Forall:
    case Tag::Exists: {
      if (qvar() == name) return *this;  // shadowed
      auto rep_frees = replacement.free_vars();
      std::string v = qvar();
      Formula body = left();
      if (rep_frees.count(v)) {
        // rename the binder to avoid capture
        std::string fresh = v;
        auto body_frees = body.free_vars();
        do {
          fresh += "'";
        } while (rep_frees.count(fresh) || body_frees.count(fresh));
        body = body.subst_term(v, Term::var(fresh, qtype()));
        v = fresh;
      }
      body = body.subst_term(name, replacement);
      return tag() == Tag::Forall ? forall(v, qtype(), body) : exists(v, qtype(), body);
    }
  }
  throw Error("subst_term: unreachable");
}

std::string Formula::to_string() const {
  // quantified operands need parens: their scope runs right as far as it can
  auto sub = [](const Formula& f) {
    std::string s = f.to_string();
    if (f.is_quantifier()) return "(" + s + ")";
    return s;
  };
  switch (tag()) {
    case Tag::Prime: return lhs().to_string() + " = " + rhs().to_string();
    case Tag::Not: return "~(" + left().to_string() + ")";
    case Tag::And: return "(" + sub(left()) + " & " + sub(right()) + ")";
    case Tag::Or: return "(" + sub(left()) + " | " + sub(right()) + ")";
    case Tag::Implies: return "(" + sub(left()) + " -> " + sub(right()) + ")";
    case Tag::Forall:
      return "forall " + qvar() + ":" + qtype().to_string() + ". " + left().to_string();
    case Tag::Exists:
      return "exists " + qvar() + ":" + qtype().to_string() + ". " + left().to_string();
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------- parser

struct FLexer {
  std::string src;
  size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool lookahead(const std::string& word) {
    skip_ws();
    return src.compare(pos, word.size(), word) == 0;
  }
  void consume(const std::string& word) {
    skip_ws();
    if (!lookahead(word)) throw ParseError("expected '" + word + "' at offset " + std::to_string(pos));
    pos += word.size();
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' || src[pos] == '\''))
      ++pos;
    if (start == pos) throw ParseError("expected identifier at offset " + std::to_string(pos));
    return src.substr(start, pos - start);
  }
};

struct FParser {
  FLexer lx;
  std::map<std::string, Type> scope;

  // scan a term up to a top-level formula delimiter and hand it to the term
  // parser with the current quantifier scope
  Term scan_term() {
    lx.skip_ws();
    size_t start = lx.pos;
    int depth = 0;
    while (lx.pos < lx.src.size()) {
      char c = lx.src[lx.pos];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0) {
        if (c == '=' || c == '&' || c == '|' || c == '~') break;
        if (c == '-' && lx.pos + 1 < lx.src.size() && lx.src[lx.pos + 1] == '>') break;
      }
      ++lx.pos;
    }
    std::string text = lx.src.substr(start, lx.pos - start);
    if (text.find_first_not_of(" \t\n\r") == std::string::npos)
      throw ParseError("expected a term at offset " + std::to_string(start));
    return parse_term(text, scope);
  }

  Formula atom() {
    if (lx.lookahead("forall") || lx.lookahead("exists")) {
      bool fa = lx.lookahead("forall");
      lx.consume(fa ? "forall" : "exists");
      std::string v = lx.ident();
      lx.consume(":");
      // reuse the type grammar through parse_type_string on a balanced scan
      Type t = scan_type();
      lx.consume(".");
      auto saved = scope.find(v);
      std::optional<Type> old;
      if (saved != scope.end()) old = saved->second;
      scope[v] = t;
      Formula body = implication();
      if (old)
        scope[v] = *old;
      else
        scope.erase(v);
      return fa ? Formula::forall(v, t, body) : Formula::exists(v, t, body);
    }
    if (lx.lookahead("~")) {
      lx.consume("~");
      return Formula::lnot(atom());
    }
    if (lx.peek() == '(') {
      // try a parenthesized formula; on failure re-parse as a term
      size_t save = lx.pos;
      try {
        lx.consume("(");
        Formula f = implication();
        lx.consume(")");
        return f;
      } catch (const ParseError&) {
        lx.pos = save;
      }
    }
    Term l = scan_term();
    lx.consume("=");
    Term r = scan_term();
    return Formula::prime(l, r);
  }

  Type scan_type() {
    lx.skip_ws();
    size_t start = lx.pos;
    if (lx.src[lx.pos] == '0') {
      ++lx.pos;
      return Type::ground();
    }
    int depth = 0;
    while (lx.pos < lx.src.size()) {
      char c = lx.src[lx.pos];
      if (c == '(') ++depth;
      if (c == ')') {
        --depth;
        if (depth == 0) {
          ++lx.pos;
          break;
        }
      }
      ++lx.pos;
    }
    return parse_type_string(lx.src.substr(start, lx.pos - start));
  }

  Formula conjunction() {
    Formula f = atom();
    while (lx.lookahead("&")) {
      lx.consume("&");
      f = Formula::land(f, atom());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (lx.lookahead("|")) {
      lx.consume("|");
      f = Formula::lor(f, conjunction());
    }
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (lx.lookahead("->")) {
      lx.consume("->");
      return Formula::implies(f, implication());
    }
    return f;
  }
};

}  // namespace

Formula parse_formula(const std::string& src) {
  FParser p{FLexer{src}, {}};
  Formula f = p.implication();
  if (!p.lx.eof()) throw ParseError("trailing input after formula");
  return f;
}

FormulaEval eval_formula(const Formula& f, const Env& env, const EvalLimits& lim,
                         uint64_t quant_bound, const GInterp* g_interp) {
  switch (f.tag()) {
    case Formula::Tag::Prime: {
      EvalResult l = evaluate(f.lhs(), env, lim, g_interp);
      EvalResult r = evaluate(f.rhs(), env, lim, g_interp);
      return {l.value == r.value, true, l.incomplete || r.incomplete};
    }
    case Formula::Tag::Not: {
      FormulaEval a = eval_formula(f.left(), env, lim, quant_bound, g_interp);
      return {!a.value, a.exact, a.incomplete};
    }
    case Formula::Tag::And: {
      FormulaEval a = eval_formula(f.left(), env, lim, quant_bound, g_interp);
      FormulaEval b = eval_formula(f.right(), env, lim, quant_bound, g_interp);
      return {a.value && b.value, a.exact && b.exact, a.incomplete || b.incomplete};
    }
    case Formula::Tag::Or: {
      FormulaEval a = eval_formula(f.left(), env, lim, quant_bound, g_interp);
      FormulaEval b = eval_formula(f.right(), env, lim, quant_bound, g_interp);
      return {a.value || b.value, a.exact && b.exact, a.incomplete || b.incomplete};
    }
    case Formula::Tag::Implies: {
      FormulaEval a = eval_formula(f.left(), env, lim, quant_bound, g_interp);
      FormulaEval b = eval_formula(f.right(), env, lim, quant_bound, g_interp);
      return {!a.value || b.value, a.exact && b.exact, a.incomplete || b.incomplete};
    }
    case Formula::Tag::Forall:
    case Formula::Tag::Exists: {
      if (!f.qtype().is_ground())
        throw Error("eval_formula: cannot enumerate a quantifier over " + f.qtype().to_string());
      bool is_forall = f.tag() == Formula::Tag::Forall;
      bool incomplete = false;
      for (uint64_t v = 0; v < quant_bound; ++v) {
        Env e = env;
        e.assign_nat(f.qvar(), v);
        FormulaEval b = eval_formula(f.left(), e, lim, quant_bound, g_interp);
        incomplete = incomplete || b.incomplete;
        if (is_forall && !b.value) return {false, true, incomplete};
        if (!is_forall && b.value) return {true, true, incomplete};
      }
      return {is_forall, false, incomplete};
    }
  }
  throw Error("eval_formula: unreachable");
}

}  // namespace leb
