#include "leb/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace leb {

Type Type::ground() {
  static const auto g = std::make_shared<const Node>(Node{true, 0, nullptr, nullptr});
  return wrap(g);
}

Type::Type() : Type(ground()) {}

Type Type::arrow(Type arg, Type res) {
  int deg = std::max(res.node_->degree, arg.node_->degree + 1);
  return wrap(std::make_shared<const Node>(Node{false, deg, arg.node_, res.node_}));
}

Type Type::pure(int n) {
  Type t = ground();
  for (int i = 0; i < n; ++i) t = arrow(t, ground());
  return t;
}

Type Type::arg() const {
  if (node_->ground) throw std::logic_error("Type::arg on ground type");
  return wrap(node_->arg);
}

Type Type::res() const {
  if (node_->ground) throw std::logic_error("Type::res on ground type");
  return wrap(node_->res);
}

int Type::arity() const {
  int n = 0;
  auto p = node_;
  while (!p->ground) {
    ++n;
    p = p->res;
  }
  return n;
}

Type Type::result_type() const {
  auto p = node_;
  while (!p->ground) p = p->res;
  return wrap(p);
}

bool Type::operator==(const Type& o) const {
  if (node_ == o.node_) return true;
  if (node_->ground != o.node_->ground) return false;
  if (node_->ground) return true;
  if (node_->degree != o.node_->degree) return false;
  return wrap(node_->arg) == wrap(o.node_->arg) && wrap(node_->res) == wrap(o.node_->res);
}

std::string Type::to_string() const {
  if (node_->ground) return "0";
  return "(" + wrap(node_->arg).to_string() + " -> " + wrap(node_->res).to_string() + ")";
}

size_t Type::hash() const {
  if (node_->ground) return 0x9e3779b9;
  size_t h = wrap(node_->arg).hash();
  size_t h2 = wrap(node_->res).hash();
  return h * 1315423911u ^ (h2 + 0x9e3779b9 + (h << 6) + (h >> 2));
}

}  // namespace leb
