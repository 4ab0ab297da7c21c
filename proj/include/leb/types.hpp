#pragma once

#include <memory>
#include <string>

namespace leb {

// Finite types: the ground type 0 and function types (rho -> tau).
// Immutable, shared, structurally compared.
class Type {
 public:
  Type();  // ground
  static Type ground();
  static Type arrow(Type arg, Type res);
  // pure(0) = 0, pure(n+1) = pure(n) -> 0.
  static Type pure(int n);

  bool is_ground() const { return node_->ground; }
  bool is_arrow() const { return !node_->ground; }
  Type arg() const;
  Type res() const;

  // deg(0) = 0, deg(rho -> tau) = max(deg(tau), deg(rho) + 1).
  int degree() const { return node_->degree; }
  // Number of curried arguments until the ground result.
  int arity() const;
  Type result_type() const;

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }

  std::string to_string() const;  // "0" or "(a -> b)"
  size_t hash() const;

 private:
  struct Node {
    bool ground;
    int degree;
    std::shared_ptr<const Node> arg, res;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Type wrap(std::shared_ptr<const Node> n) { return Type(std::move(n)); }
  std::shared_ptr<const Node> node_;
};

}  // namespace leb
