#pragma once

#include <cstdint>
#include <string>

namespace leb {

// Exact non-negative dyadic rational num / 2^exp. Canonical form has num odd
// or exp = 0; zero is 0 / 2^0. Arithmetic is exact and throws on overflow.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(uint64_t num, uint32_t exp);
  static Dyadic zero() { return {}; }
  static Dyadic one() { return Dyadic(1, 0); }
  // 2^-k
  static Dyadic pow2_neg(uint32_t k) { return Dyadic(1, k); }

  uint64_t num() const { return num_; }
  uint32_t exp() const { return exp_; }

  Dyadic operator+(const Dyadic& o) const;
  // Exact subtraction; throws if the result would be negative.
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;

  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const;
  bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }

  // floor(value * 2^k)
  uint64_t floor_scaled(uint32_t k) const;

  std::string to_string() const;  // "3/4", "1", "0"

 private:
  uint64_t num_ = 0;
  uint32_t exp_ = 0;
  void normalize();
};

struct DyadicInterval {
  Dyadic lo, hi;
  std::string to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }
};

}  // namespace leb
