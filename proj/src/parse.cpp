#include "leb/parse.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace leb {
namespace {

// ---------------------------------------------------------------- lexer

struct Lexer {
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
  char get() {
    skip_ws();
    if (pos >= src.size()) throw ParseError("unexpected end of input");
    return src[pos++];
  }
  void expect(char c) {
    char g = get();
    if (g != c)
      throw ParseError(std::string("expected '") + c + "', got '" + g + "' at offset " +
                       std::to_string(pos - 1));
  }
  bool try_consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
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

// ------------------------------------------- types with metavariables

struct MType;
using MTypeRef = std::shared_ptr<MType>;

struct MType {
  enum class K { Ground, Arrow, Meta } k;
  MTypeRef a, b;   // Arrow
  MTypeRef link;   // Meta: union-find style binding
  int id = 0;      // Meta
};

MTypeRef mground() {
  auto t = std::make_shared<MType>();
  t->k = MType::K::Ground;
  return t;
}
MTypeRef marrow(MTypeRef a, MTypeRef b) {
  auto t = std::make_shared<MType>();
  t->k = MType::K::Arrow;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

struct Infer {
  int next_meta = 0;

  MTypeRef fresh() {
    auto t = std::make_shared<MType>();
    t->k = MType::K::Meta;
    t->id = next_meta++;
    return t;
  }

  MTypeRef resolve(MTypeRef t) {
    while (t->k == MType::K::Meta && t->link) t = t->link;
    return t;
  }

  bool occurs(const MTypeRef& meta, MTypeRef t) {
    t = resolve(std::move(t));
    if (t == meta) return true;
    if (t->k == MType::K::Arrow) return occurs(meta, t->a) || occurs(meta, t->b);
    return false;
  }

  void unify(MTypeRef x, MTypeRef y) {
    x = resolve(std::move(x));
    y = resolve(std::move(y));
    if (x == y) return;
    if (x->k == MType::K::Meta) {
      if (occurs(x, y)) throw ParseError("cannot infer type (cyclic constraint)");
      x->link = y;
      return;
    }
    if (y->k == MType::K::Meta) {
      unify(y, x);
      return;
    }
    if (x->k != y->k) throw ParseError("type mismatch during inference");
    if (x->k == MType::K::Arrow) {
      unify(x->a, y->a);
      unify(x->b, y->b);
    }
  }

  MTypeRef lift(const Type& t) {
    if (t.is_ground()) return mground();
    return marrow(lift(t.arg()), lift(t.res()));
  }

  Type ground_out(MTypeRef t, const char* what) {
    (void)what;
    t = resolve(std::move(t));
    switch (t->k) {
      case MType::K::Ground: return Type::ground();
      case MType::K::Arrow:
        return Type::arrow(ground_out(t->a, what), ground_out(t->b, what));
      case MType::K::Meta:
        // unconstrained parameters default to the ground type
        return Type::ground();
    }
    throw ParseError("unreachable");
  }
};

// -------------------------------------------------------- surface AST

struct SNode;
using SRef = std::shared_ptr<SNode>;

struct SNode {
  enum class K { Var, Const, App, Lam, Num } k;
  std::string name;              // Var, Lam binder
  ConstKind kind;                // Const
  std::vector<MTypeRef> params;  // Const
  SRef f, a;                     // App
  Type lam_type = Type::ground();
  SRef body;      // Lam
  uint64_t num;   // Num
  MTypeRef type;  // filled by inference
};

Type parse_type(Lexer& lx) {
  if (lx.try_consume('0')) return Type::ground();
  lx.expect('(');
  Type a = parse_type(lx);
  lx.expect('-');
  lx.expect('>');
  Type b = parse_type(lx);
  lx.expect(')');
  return Type::arrow(a, b);
}

struct Parser {
  Lexer lx;
  Infer& inf;

  std::vector<MTypeRef> maybe_params(ConstKind k) {
    int want = const_type_param_count(k);
    std::vector<MTypeRef> ps;
    if (lx.peek() == '[') {
      lx.get();
      for (int i = 0; i < want; ++i) {
        if (i) lx.expect(',');
        ps.push_back(inf.lift(parse_type(lx)));
      }
      lx.expect(']');
    } else {
      for (int i = 0; i < want; ++i) ps.push_back(inf.fresh());
    }
    return ps;
  }

  SRef atom_from_word(const std::string& w) {
    auto node = std::make_shared<SNode>();
    if (!w.empty() && std::isdigit((unsigned char)w[0])) {
      for (char c : w)
        if (!std::isdigit((unsigned char)c))
          throw ParseError("malformed numeral: " + w);
      node->k = SNode::K::Num;
      node->num = std::stoull(w);
      return node;
    }
    static const std::map<std::string, ConstKind> kw = {
        {"S", ConstKind::Succ},   {"Pi", ConstKind::Pi},   {"Sigma", ConstKind::Sigma},
        {"R0", ConstKind::Rec0},  {"Cond", ConstKind::Cond}, {"Mu", ConstKind::Mu},
        {"Leb", ConstKind::Leb},  {"Eps", ConstKind::Eps}};
    auto it = kw.find(w);
    if (it != kw.end()) {
      node->k = SNode::K::Const;
      node->kind = it->second;
      node->params = maybe_params(it->second);
      return node;
    }
    node->k = SNode::K::Var;
    node->name = w;
    return node;
  }

  SRef parse() {
    char c = lx.peek();
    if (c == '(') {
      lx.get();
      // lam?
      size_t save = lx.pos;
      if (std::isalpha((unsigned char)lx.peek())) {
        std::string w = lx.ident();
        if (w == "lam") {
          auto node = std::make_shared<SNode>();
          node->k = SNode::K::Lam;
          node->name = lx.ident();
          lx.expect(':');
          node->lam_type = parse_type(lx);
          lx.try_consume('.');
          node->body = parse();
          lx.expect(')');
          return node;
        }
        lx.pos = save;
      }
      SRef t = parse();
      // applications: one or more further terms, left-associated
      if (lx.peek() == ')')
        throw ParseError("expected application argument at offset " + std::to_string(lx.pos));
      while (lx.peek() != ')') {
        auto node = std::make_shared<SNode>();
        node->k = SNode::K::App;
        node->f = t;
        node->a = parse();
        t = node;
      }
      lx.expect(')');
      return t;
    }
    if (std::isdigit((unsigned char)c) || std::isalpha((unsigned char)c) || c == '_')
      return atom_from_word(lx.ident());
    throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                     std::to_string(lx.pos));
  }
};

// Constraint generation: assigns an MType to every surface node.
void annotate(const SRef& n, std::map<std::string, MTypeRef>& scope, Infer& inf) {
  switch (n->k) {
    case SNode::K::Num:
      n->type = mground();
      return;
    case SNode::K::Var: {
      auto it = scope.find(n->name);
      if (it != scope.end()) {
        n->type = it->second;
      } else {
        // free variable: one shared meta per name
        auto t = inf.fresh();
        scope.emplace(n->name, t);
        n->type = t;
      }
      return;
    }
    case SNode::K::Const: {
      const Type o = Type::ground();
      auto g = [&] { return mground(); };
      switch (n->kind) {
        case ConstKind::Zero: n->type = g(); break;
        case ConstKind::Succ: n->type = marrow(g(), g()); break;
        case ConstKind::Pi:
          n->type = marrow(n->params[0], marrow(n->params[1], n->params[0]));
          break;
        case ConstKind::Sigma:
          n->type = marrow(marrow(n->params[0], marrow(n->params[1], n->params[2])),
                           marrow(marrow(n->params[0], n->params[1]),
                                  marrow(n->params[0], n->params[2])));
          break;
        case ConstKind::Rec0:
          n->type = marrow(g(), marrow(g(), marrow(marrow(g(), marrow(g(), g())), g())));
          break;
        case ConstKind::Cond:
          n->type = marrow(g(), marrow(n->params[0], marrow(n->params[0], n->params[0])));
          break;
        case ConstKind::Mu: n->type = marrow(marrow(g(), g()), g()); break;
        case ConstKind::Leb:
        case ConstKind::Eps:
          n->type = marrow(inf.lift(Type::pure(2)), inf.lift(Type::pure(1)));
          break;
      }
      (void)o;
      return;
    }
    case SNode::K::App: {
      annotate(n->f, scope, inf);
      annotate(n->a, scope, inf);
      auto res = inf.fresh();
      inf.unify(n->f->type, marrow(n->a->type, res));
      n->type = res;
      return;
    }
    case SNode::K::Lam: {
      auto saved = scope.find(n->name);
      MTypeRef old;
      bool had = false;
      if (saved != scope.end()) {
        old = saved->second;
        had = true;
      }
      scope[n->name] = inf.lift(n->lam_type);
      annotate(n->body, scope, inf);
      n->type = marrow(scope[n->name], n->body->type);
      if (had)
        scope[n->name] = old;
      else
        scope.erase(n->name);
      return;
    }
  }
}

Term build(const SRef& n, std::map<std::string, Type>& var_types, Infer& inf) {
  switch (n->k) {
    case SNode::K::Num: return Term::numeral(n->num);
    case SNode::K::Var: {
      Type t = inf.ground_out(n->type, n->name.c_str());
      auto it = var_types.find(n->name);
      if (it == var_types.end()) var_types.emplace(n->name, t);
      return Term::var(n->name, t);
    }
    case SNode::K::Const: {
      std::vector<Type> ps;
      ps.reserve(n->params.size());
      for (auto& p : n->params) ps.push_back(inf.ground_out(p, const_kind_name(n->kind)));
      return Term::constant(n->kind, std::move(ps));
    }
    case SNode::K::App:
      return Term::app(build(n->f, var_types, inf), build(n->a, var_types, inf));
    case SNode::K::Lam: {
      Term body = build(n->body, var_types, inf);
      return lambda_abstract(n->name, n->lam_type, body);
    }
  }
  throw ParseError("unreachable");
}

}  // namespace

Term parse_term(const std::string& src) {
  return parse_term(src, {});
}

Term parse_term(const std::string& src, const std::map<std::string, Type>& var_types_in) {
  Infer inf;
  Parser p{Lexer{src}, inf};
  SRef ast = p.parse();
  if (!p.lx.eof()) throw ParseError("trailing input after term");
  std::map<std::string, MTypeRef> scope;
  for (auto& [name, ty] : var_types_in) scope.emplace(name, inf.lift(ty));
  annotate(ast, scope, inf);
  std::map<std::string, Type> var_types;
  return build(ast, var_types, inf);
}

Type parse_type_string(const std::string& src) {
  Lexer lx{src};
  Type t = parse_type(lx);
  if (!lx.eof()) throw ParseError("trailing input after type");
  return t;
}

}  // namespace leb
