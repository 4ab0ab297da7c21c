#include "leb/term.hpp"

#include <functional>

namespace leb {

const char* const_kind_name(ConstKind k) {
  switch (k) {
    case ConstKind::Zero: return "0";
    case ConstKind::Succ: return "S";
    case ConstKind::Pi: return "Pi";
    case ConstKind::Sigma: return "Sigma";
    case ConstKind::Rec0: return "R0";
    case ConstKind::Cond: return "Cond";
    case ConstKind::Mu: return "Mu";
    case ConstKind::Leb: return "Leb";
    case ConstKind::Eps: return "Eps";
  }
  return "?";
}

int const_type_param_count(ConstKind k) {
  switch (k) {
    case ConstKind::Pi: return 2;
    case ConstKind::Sigma: return 3;
    case ConstKind::Cond: return 1;
    default: return 0;
  }
}

Type const_type(ConstKind k, const std::vector<Type>& p) {
  const Type o = Type::ground();
  if ((int)p.size() != const_type_param_count(k))
    throw IllTyped(std::string("wrong number of type parameters for ") + const_kind_name(k));
  switch (k) {
    case ConstKind::Zero: return o;
    case ConstKind::Succ: return Type::arrow(o, o);
    case ConstKind::Pi:  // r -> s -> r
      return Type::arrow(p[0], Type::arrow(p[1], p[0]));
    case ConstKind::Sigma:  // (r->s->t) -> (r->s) -> r -> t
      return Type::arrow(Type::arrow(p[0], Type::arrow(p[1], p[2])),
                         Type::arrow(Type::arrow(p[0], p[1]), Type::arrow(p[0], p[2])));
    case ConstKind::Rec0:  // 0 -> 0 -> (0->0->0) -> 0
      return Type::arrow(o, Type::arrow(o, Type::arrow(Type::arrow(o, Type::arrow(o, o)), o)));
    case ConstKind::Cond:  // 0 -> r -> r -> r
      return Type::arrow(o, Type::arrow(p[0], Type::arrow(p[0], p[0])));
    case ConstKind::Mu: return Type::arrow(Type::pure(1), o);
    case ConstKind::Leb:
    case ConstKind::Eps:  // set code to type-1 result
      return Type::arrow(Type::pure(2), Type::pure(1));
  }
  throw IllTyped("unknown constant");
}

static size_t hash_mix(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

Term::Term() : Term(constant(ConstKind::Zero)) {}

Term Term::var(std::string name, Type type) {
  Node n;
  n.tag = Tag::Var;
  n.type = type;
  n.name = std::move(name);
  n.kind = ConstKind::Zero;
  n.hash = hash_mix(std::hash<std::string>{}(n.name), type.hash());
  return wrap(std::make_shared<const Node>(std::move(n)));
}

Term Term::constant(ConstKind k, std::vector<Type> params) {
  Node n;
  n.tag = Tag::Const;
  n.type = const_type(k, params);
  n.kind = k;
  n.params = std::move(params);
  size_t h = hash_mix(0x51ed2701, (size_t)k);
  for (auto& p : n.params) h = hash_mix(h, p.hash());
  n.hash = h;
  return wrap(std::make_shared<const Node>(std::move(n)));
}

Term Term::app(Term fun, Term arg) {
  const Type& ft = fun.type();
  if (!ft.is_arrow())
    throw IllTyped("applying non-function " + fun.to_string());
  if (ft.arg() != arg.type())
    throw IllTyped("argument type " + arg.type().to_string() + " does not match domain " +
                   ft.arg().to_string() + " in application of " + fun.to_string());
  return app_unchecked(std::move(fun), std::move(arg));
}

Term Term::app_unchecked(Term fun, Term arg) {
  Node n;
  n.tag = Tag::App;
  n.type = fun.type().is_arrow() ? fun.type().res() : Type::ground();
  n.kind = ConstKind::Zero;
  n.hash = hash_mix(hash_mix(0xa9f1, fun.hash()), arg.hash());
  n.fun = fun.node_;
  n.arg = arg.node_;
  return wrap(std::make_shared<const Node>(std::move(n)));
}

const std::string& Term::var_name() const {
  if (!is_var()) throw std::logic_error("var_name on non-variable");
  return node_->name;
}

ConstKind Term::const_kind() const {
  if (!is_const()) throw std::logic_error("const_kind on non-constant");
  return node_->kind;
}

const std::vector<Type>& Term::type_params() const {
  if (!is_const()) throw std::logic_error("type_params on non-constant");
  return node_->params;
}

Term Term::fun() const {
  if (!is_app()) throw std::logic_error("fun on non-application");
  return wrap(node_->fun);
}

Term Term::arg() const {
  if (!is_app()) throw std::logic_error("arg on non-application");
  return wrap(node_->arg);
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash || node_->tag != o.node_->tag) return false;
  switch (node_->tag) {
    case Tag::Var:
      return node_->name == o.node_->name && node_->type == o.node_->type;
    case Tag::Const: {
      if (node_->kind != o.node_->kind || node_->params.size() != o.node_->params.size())
        return false;
      for (size_t i = 0; i < node_->params.size(); ++i)
        if (node_->params[i] != o.node_->params[i]) return false;
      return true;
    }
    case Tag::App:
      return wrap(node_->fun) == wrap(o.node_->fun) && wrap(node_->arg) == wrap(o.node_->arg);
  }
  return false;
}

std::pair<Term, std::vector<Term>> Term::spine() const {
  std::vector<Term> args;
  Term h = *this;
  while (h.is_app()) {
    args.push_back(h.arg());
    h = h.fun();
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

Term Term::apply_spine(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = Term::app(head, a);
  return head;
}

std::map<std::string, Type> Term::free_vars() const {
  std::map<std::string, Type> out;
  std::function<void(const Node*)> go = [&](const Node* n) {
    switch (n->tag) {
      case Tag::Var: out.emplace(n->name, n->type); break;
      case Tag::Const: break;
      case Tag::App:
        go(n->fun.get());
        go(n->arg.get());
        break;
    }
  };
  go(node_.get());
  return out;
}

bool Term::mentions_var(const std::string& name) const {
  switch (tag()) {
    case Tag::Var: return node_->name == name;
    case Tag::Const: return false;
    case Tag::App: return fun().mentions_var(name) || arg().mentions_var(name);
  }
  return false;
}

bool Term::mentions_const(ConstKind k) const {
  switch (tag()) {
    case Tag::Var: return false;
    case Tag::Const: return node_->kind == k;
    case Tag::App: return fun().mentions_const(k) || arg().mentions_const(k);
  }
  return false;
}

size_t Term::size() const {
  switch (tag()) {
    case Tag::Var:
    case Tag::Const: return 1;
    case Tag::App: return 1 + fun().size() + arg().size();
  }
  return 1;
}

Term Term::subst(const std::string& name, const Term& replacement) const {
  switch (tag()) {
    case Tag::Var:
      if (node_->name == name) {
        if (replacement.type() != node_->type)
          throw TypeMismatch("substitution for " + name + " has type " +
                             replacement.type().to_string() + ", expected " +
                             node_->type.to_string());
        return replacement;
      }
      return *this;
    case Tag::Const: return *this;
    case Tag::App: {
      if (!mentions_var(name)) return *this;
      return app_unchecked(fun().subst(name, replacement), arg().subst(name, replacement));
    }
  }
  return *this;
}

std::optional<Term> Term::at_path(const Path& p) const {
  Term t = *this;
  for (uint8_t step : p) {
    if (!t.is_app()) return std::nullopt;
    t = step == 0 ? t.fun() : t.arg();
  }
  return t;
}

Term Term::replace_at(const Path& p, const Term& replacement) const {
  if (p.empty()) return replacement;
  if (!is_app()) throw Error("replace_at: path leaves the term");
  Path rest(p.begin() + 1, p.end());
  if (p[0] == 0) return app_unchecked(fun().replace_at(rest, replacement), arg());
  return app_unchecked(fun(), arg().replace_at(rest, replacement));
}

Term Term::numeral(uint64_t n) {
  Term t = constant(ConstKind::Zero);
  const Term s = constant(ConstKind::Succ);
  for (uint64_t i = 0; i < n; ++i) t = app(s, t);
  return t;
}

std::optional<uint64_t> Term::as_numeral() const {
  uint64_t n = 0;
  Term t = *this;
  while (t.is_app() && t.fun().is_const(ConstKind::Succ)) {
    ++n;
    t = t.arg();
  }
  if (t.is_const(ConstKind::Zero)) return n;
  return std::nullopt;
}

std::string Term::to_string() const {
  if (auto n = as_numeral()) return std::to_string(*n);
  switch (tag()) {
    case Tag::Var: return node_->name;
    case Tag::Const: {
      std::string s = const_kind_name(node_->kind);
      if (!node_->params.empty()) {
        s += "[";
        for (size_t i = 0; i < node_->params.size(); ++i) {
          if (i) s += ",";
          s += node_->params[i].to_string();
        }
        s += "]";
      }
      return s;
    }
    case Tag::App: return "(" + fun().to_string() + " " + arg().to_string() + ")";
  }
  return "?";
}

Type typecheck(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var: return t.type();
    case Term::Tag::Const: return const_type(t.const_kind(), t.type_params());
    case Term::Tag::App: {
      Type ft = typecheck(t.fun());
      Type at = typecheck(t.arg());
      if (!ft.is_arrow())
        throw IllTyped("applying non-function " + t.fun().to_string());
      if (ft.arg() != at)
        throw IllTyped("argument type " + at.to_string() + " does not match domain " +
                       ft.arg().to_string() + " at " + t.to_string());
      return ft.res();
    }
  }
  throw IllTyped("malformed term");
}

// I_rho := Sigma[rho, 0->rho, rho] Pi[rho, 0->rho] Pi[rho, 0], satisfying I x = x.
static Term identity_comb(const Type& rho) {
  Type aux = Type::arrow(Type::ground(), rho);
  Term sig = Term::constant(ConstKind::Sigma, {rho, aux, rho});
  Term k1 = Term::constant(ConstKind::Pi, {rho, aux});
  Term k2 = Term::constant(ConstKind::Pi, {rho, Type::ground()});
  return Term::app(Term::app(sig, k1), k2);
}

Term lambda_abstract(const std::string& var, const Type& var_type, const Term& body) {
  if (!body.mentions_var(var)) {
    Term k = Term::constant(ConstKind::Pi, {body.type(), var_type});
    return Term::app(k, body);
  }
  if (body.is_var() && body.var_name() == var) {
    if (body.type() != var_type)
      throw TypeMismatch("variable " + var + " used at a different type");
    return identity_comb(var_type);
  }
  if (body.is_app()) {
    Term f = body.fun(), a = body.arg();
    // eta: [x](f x) = f when x not free in f
    if (a.is_var() && a.var_name() == var && !f.mentions_var(var)) return f;
    Term fa = lambda_abstract(var, var_type, f);
    Term aa = lambda_abstract(var, var_type, a);
    Term sig = Term::constant(ConstKind::Sigma, {var_type, a.type(), body.type()});
    return Term::app(Term::app(sig, fa), aa);
  }
  throw Error("lambda_abstract: unreachable");
}

}  // namespace leb
