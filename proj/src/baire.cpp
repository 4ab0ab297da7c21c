#include "leb/baire.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"
#include "leb/branch.hpp"
#include "leb/error.hpp"
#include "leb/termlib.hpp"

namespace leb {

OpenCode OpenCode::from_term(Term enumerator) {
  if (enumerator.type() != Type::pure(1))
    throw Error("open-code enumerator must have type (0 -> 0)");
  return {std::move(enumerator)};
}

namespace {

// prefix relation between a cell and an oracle
bool cell_matches(const Bits& cell, const Oracle& f) {
  for (size_t i = 0; i < cell.size(); ++i)
    if ((f.at(i) == 0 ? 0 : 1) != cell[i]) return false;
  return true;
}

// [a] and [b] intersect iff one is a prefix of the other
bool cells_intersect(const Bits& a, const Bits& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Bits enumerate_cell(const Term& enumerator, uint64_t n, const EvalLimits& lim) {
  Term applied = Term::app(enumerator, Term::numeral(n));
  return tl::seq_decode(evaluate(applied, {}, lim).value);
}

}  // namespace

MembershipResult open_membership(const OpenCode& g, const Oracle& f, const EvalLimits& lim) {
  if (g.is_finite()) {
    for (size_t n = 0; n < g.cells().size(); ++n)
      if (cell_matches(g.cells()[n], f)) return {true, false, n};
    return {false, false, std::nullopt};
  }
  const Term& en = std::get<1>(g.listing);
  for (uint64_t n = 0; n < (uint64_t)lim.mu_bound; ++n)
    if (cell_matches(enumerate_cell(en, n, lim), f)) return {true, false, n};
  return {false, true, std::nullopt};
}

bool cell_meets_open(const OpenCode& g, const Bits& cell, const EvalLimits& lim) {
  if (g.is_finite()) {
    for (const Bits& c : g.cells())
      if (cells_intersect(c, cell)) return true;
    return false;
  }
  const Term& en = std::get<1>(g.listing);
  for (uint64_t n = 0; n < (uint64_t)lim.mu_bound; ++n)
    if (cells_intersect(enumerate_cell(en, n, lim), cell)) return true;
  return false;
}

MembershipResult cell_inside_closed(const ClosedCode& h, const Bits& cell,
                                    const EvalLimits& lim) {
  // [cell] inside H iff [cell] disjoint from the complementary open set;
  // for finite listings this is exact
  const OpenCode& u = h.complement_of;
  if (u.is_finite()) {
    for (const Bits& c : u.cells())
      if (cells_intersect(c, cell)) return {false, false, std::nullopt};
    return {true, false, std::nullopt};
  }
  const Term& en = std::get<1>(u.listing);
  for (uint64_t n = 0; n < (uint64_t)lim.mu_bound; ++n)
    if (cells_intersect(enumerate_cell(en, n, lim), cell)) return {false, false, n};
  return {true, true, std::nullopt};
}

BaireWitness BaireWitness::clopen(OpenCode g) {
  BaireWitness w;
  w.g_ = std::move(g);
  w.h_ = std::vector<ClosedCode>{};
  return w;
}

BaireWitness BaireWitness::finite_h(OpenCode g, std::vector<ClosedCode> hs) {
  BaireWitness w;
  w.g_ = std::move(g);
  w.h_ = std::move(hs);
  return w;
}

BaireWitness BaireWitness::union_of(std::vector<BaireWitness> parts) {
  BaireWitness w;
  std::vector<Bits> cells;
  for (const auto& p : parts) {
    if (!p.g().is_finite())
      throw Error("witness union over term-listed opens is not supported");
    for (const Bits& c : p.g().cells()) cells.push_back(c);
  }
  w.g_ = OpenCode::finite(std::move(cells));
  w.h_ = Union{std::move(parts)};
  return w;
}

BaireWitness BaireWitness::complement_of(BaireWitness inner, OpenCode interior,
                                         ClosedCode border) {
  BaireWitness w;
  w.g_ = std::move(interior);
  w.h_ = Complement{std::make_shared<BaireWitness>(std::move(inner)), std::move(border)};
  return w;
}

std::optional<ClosedCode> BaireWitness::h_at(uint64_t n) const {
  switch (h_.index()) {
    case 0: {
      const auto& v = std::get<0>(h_);
      if (n < v.size()) return v[n];
      return std::nullopt;
    }
    case 1: {
      // H_{<n1,n2>}(union X_n) = H_{n1}(X_{n2})
      const auto& u = std::get<1>(h_);
      auto [n1, n2] = tl::cantor_unpair(n);
      if (n2 >= u.parts.size()) return std::nullopt;
      return u.parts[n2].h_at(n1);
    }
    case 2: {
      const auto& c = std::get<2>(h_);
      if (n == 0) return c.border;
      return c.inner->h_at(n - 1);
    }
  }
  return std::nullopt;
}

uint64_t BaireWitness::h_bound() const {
  switch (h_.index()) {
    case 0: return std::get<0>(h_).size();
    case 1: {
      const auto& u = std::get<1>(h_);
      uint64_t maxn1 = 0;
      for (const auto& p : u.parts) maxn1 = std::max(maxn1, p.h_bound());
      if (maxn1 == 0) return 0;
      return tl::cantor_pair(maxn1 - 1, u.parts.size() - 1) + 1;
    }
    case 2: return 1 + std::get<2>(h_).inner->h_bound();
  }
  return 0;
}

BaireWitness witness_clopen(const Term& set_code, const EvalLimits& lim) {
  BranchTree tree = branch_evaluate(set_code, lim);
  std::vector<Bits> cells;
  for (const auto* leaf : tree.leaves()) {
    if (leaf->value != 0) continue;
    uint64_t len = 0;
    for (auto& [ix, bit] : leaf->constraints) len = std::max(len, ix + 1);
    // expand the leaf to the basic opens of length len it covers
    std::vector<int> fixed(len, -1);
    for (auto& [ix, bit] : leaf->constraints) fixed[ix] = bit;
    uint64_t free_count = 0;
    for (auto v : fixed)
      if (v < 0) ++free_count;
    for (uint64_t m = 0; m < (uint64_t(1) << free_count); ++m) {
      Bits cell(len);
      uint64_t k = 0;
      for (uint64_t i = 0; i < len; ++i) {
        if (fixed[i] >= 0) {
          cell[i] = (uint8_t)fixed[i];
        } else {
          cell[i] = (m >> k) & 1;
          ++k;
        }
      }
      cells.push_back(std::move(cell));
    }
  }
  std::sort(cells.begin(), cells.end());
  return BaireWitness::clopen(OpenCode::finite(std::move(cells)));
}

BaireWitness witness_union(std::vector<BaireWitness> parts) {
  return BaireWitness::union_of(std::move(parts));
}

ComplementResult witness_complement(const BaireWitness& w, uint32_t depth,
                                    const EvalLimits& lim) {
  if (depth < 1) throw Error("witness_complement: depth must be >= 1");
  ComplementResult out{BaireWitness::clopen(OpenCode::finite({})), false};

  // maximal cells of length <= depth disjoint from G
  std::vector<Bits> interior;
  bool incomplete = false;
  std::function<void(Bits&)> walk = [&](Bits& cell) {
    if (!cell_meets_open(w.g(), cell, lim)) {
      if (!w.g().is_finite()) incomplete = true;  // disjointness only mu-searched
      interior.push_back(cell);
      return;
    }
    // [cell] meets G; when it might not be inside G and we may refine, recurse
    if (cell.size() >= depth) return;
    cell.push_back(0);
    walk(cell);
    cell.back() = 1;
    walk(cell);
    cell.pop_back();
  };
  Bits root;
  walk(root);

  OpenCode interior_code = OpenCode::finite(interior);
  // border: complement of (G union G') as a closed code
  std::vector<Bits> both;
  if (!w.g().is_finite()) throw Error("witness_complement needs a finite G listing");
  both = w.g().cells();
  both.insert(both.end(), interior.begin(), interior.end());
  ClosedCode border{OpenCode::finite(std::move(both))};

  out.witness = BaireWitness::complement_of(w, std::move(interior_code), std::move(border));
  out.incomplete_interior = incomplete;
  return out;
}

bool nowhere_dense_at_depth(const ClosedCode& h, uint32_t depth, const EvalLimits& lim) {
  // check every cell with |s| <= depth: none fits inside H
  std::function<bool(Bits&)> walk = [&](Bits& cell) -> bool {
    if (cell_inside_closed(h, cell, lim).member) return false;
    if (cell.size() >= depth) return true;
    cell.push_back(0);
    bool ok = walk(cell);
    cell.back() = 1;
    ok = ok && walk(cell);
    cell.pop_back();
    return ok;
  };
  Bits root;
  return walk(root);
}

static std::string bits_to_string(const Bits& b) {
  std::string s;
  for (uint8_t x : b) s += x ? '1' : '0';
  return s;
}

static Bits bits_from_string(const std::string& s) {
  Bits b;
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("invalid cell string: " + s);
    b.push_back(c == '1');
  }
  return b;
}

std::string witness_to_json(const BaireWitness& w) {
  nlohmann::json j;
  if (!w.g().is_finite()) throw Error("only finite witnesses serialize to JSON");
  nlohmann::json cells = nlohmann::json::array();
  for (const Bits& c : w.g().cells()) cells.push_back(bits_to_string(c));
  j["g"] = cells;
  nlohmann::json hs = nlohmann::json::array();
  for (uint64_t n = 0; n < w.h_bound(); ++n) {
    auto h = w.h_at(n);
    nlohmann::json hj;
    if (h) {
      if (!h->complement_of.is_finite()) throw Error("only finite witnesses serialize to JSON");
      nlohmann::json hc = nlohmann::json::array();
      for (const Bits& c : h->complement_of.cells()) hc.push_back(bits_to_string(c));
      hj["complement_of"] = hc;
    } else {
      hj["empty"] = true;
    }
    hs.push_back(hj);
  }
  j["h"] = hs;
  return j.dump(2);
}

BaireWitness witness_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Bits> cells;
  for (const auto& c : j.at("g")) cells.push_back(bits_from_string(c.get<std::string>()));
  std::vector<ClosedCode> hs;
  if (j.contains("h")) {
    for (const auto& hj : j.at("h")) {
      if (hj.contains("empty") && hj.at("empty").get<bool>()) {
        hs.push_back(ClosedCode{OpenCode::finite({Bits{}})});  // complement of full = empty H
        continue;
      }
      std::vector<Bits> hc;
      for (const auto& c : hj.at("complement_of"))
        hc.push_back(bits_from_string(c.get<std::string>()));
      hs.push_back(ClosedCode{OpenCode::finite(std::move(hc))});
    }
  }
  return BaireWitness::finite_h(OpenCode::finite(std::move(cells)), std::move(hs));
}

}  // namespace leb
