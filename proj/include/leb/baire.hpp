#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "leb/eval.hpp"
#include "leb/term.hpp"

namespace leb {

using Bits = std::vector<uint8_t>;

// An open set as a listing of basic cells: either an explicit finite list of
// bit strings, or a type-1 term enumerating string codes.
struct OpenCode {
  std::variant<std::vector<Bits>, Term> listing;

  bool is_finite() const { return listing.index() == 0; }
  const std::vector<Bits>& cells() const { return std::get<0>(listing); }
  static OpenCode finite(std::vector<Bits> cells) { return {std::move(cells)}; }
  static OpenCode from_term(Term enumerator);
};

// A closed set, stored as the complement of an open one.
struct ClosedCode {
  OpenCode complement_of;
};

struct MembershipResult {
  bool member = false;
  bool incomplete = false;  // infinite listing searched only to the mu bound
  std::optional<uint64_t> witness;
};

MembershipResult open_membership(const OpenCode& g, const Oracle& f,
                                 const EvalLimits& lim = {});

// [s] subset of the closed set H iff [s] misses H's complementary open set.
MembershipResult cell_inside_closed(const ClosedCode& h, const Bits& cell,
                                    const EvalLimits& lim = {});

// The Baire witness of a set: an open G and closed nowhere-dense H_n covering
// the symmetric difference. Unions reindex the H side through the Cantor
// pairing; complements produce the depth-bounded interior plus a border set.
class BaireWitness {
 public:
  static BaireWitness clopen(OpenCode g);
  static BaireWitness finite_h(OpenCode g, std::vector<ClosedCode> hs);
  static BaireWitness union_of(std::vector<BaireWitness> parts);
  static BaireWitness complement_of(BaireWitness inner, OpenCode interior, ClosedCode border);

  const OpenCode& g() const { return g_; }
  // H_n; nullopt means the empty set (no constraint).
  std::optional<ClosedCode> h_at(uint64_t n) const;
  // indices below which h_at can be nonempty
  uint64_t h_bound() const;

 private:
  OpenCode g_;
  struct Union {
    std::vector<BaireWitness> parts;
  };
  struct Complement {
    std::shared_ptr<BaireWitness> inner;
    ClosedCode border;
  };
  std::variant<std::vector<ClosedCode>, Union, Complement> h_;
};

// The witness of a clopen set code: G lists the value-0 cells of the branch
// tree (each leaf expanded to the basic opens it covers), all H_n empty.
BaireWitness witness_clopen(const Term& set_code, const EvalLimits& lim = {});

BaireWitness witness_union(std::vector<BaireWitness> parts);

struct ComplementResult {
  BaireWitness witness;
  bool incomplete_interior = false;
};

// G' = maximal cells of length <= depth disjoint from G (exact for finite
// listings), H'_0 = border (complement of G union G'), H'_{n+1} = H_n.
ComplementResult witness_complement(const BaireWitness& w, uint32_t depth,
                                    const EvalLimits& lim = {});

// Bounded nowhere-density check: no cell with |s| <= depth fits inside H.
bool nowhere_dense_at_depth(const ClosedCode& h, uint32_t depth, const EvalLimits& lim = {});

// All cells of length k whose basic opens meet / avoid the open set.
bool cell_meets_open(const OpenCode& g, const Bits& cell, const EvalLimits& lim = {});

// JSON (de)serialization of finite witnesses.
std::string witness_to_json(const BaireWitness& w);
BaireWitness witness_from_json(const std::string& text);

}  // namespace leb
