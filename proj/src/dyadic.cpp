#include "leb/dyadic.hpp"

#include "leb/error.hpp"

namespace leb {

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic::Dyadic(uint64_t num, uint32_t exp) : num_(num), exp_(exp) {
  if (exp > 62) throw Error("dyadic exponent too large: " + std::to_string(exp));
  normalize();
}

static void align(const Dyadic& a, const Dyadic& b, uint64_t& na, uint64_t& nb, uint32_t& e) {
  e = std::max(a.exp(), b.exp());
  if (e > 62) throw Error("dyadic exponent overflow");
  uint32_t sa = e - a.exp(), sb = e - b.exp();
  if ((a.num() >> (63 - sa)) != 0 || (b.num() >> (63 - sb)) != 0)
    throw Error("dyadic numerator overflow");
  na = a.num() << sa;
  nb = b.num() << sb;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  uint64_t na, nb;
  uint32_t e;
  align(*this, o, na, nb, e);
  if (na > UINT64_MAX - nb) throw Error("dyadic addition overflow");
  return Dyadic(na + nb, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  uint64_t na, nb;
  uint32_t e;
  align(*this, o, na, nb, e);
  if (na < nb) throw Error("dyadic subtraction underflow");
  return Dyadic(na - nb, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  if (num_ != 0 && o.num_ > UINT64_MAX / num_) throw Error("dyadic multiplication overflow");
  uint32_t e = exp_ + o.exp_;
  if (e > 62) {
    // try to renormalize before giving up
    Dyadic r;
    r.num_ = num_ * o.num_;
    r.exp_ = e;
    while (r.exp_ > 62 && r.num_ != 0 && (r.num_ & 1) == 0) {
      r.num_ >>= 1;
      --r.exp_;
    }
    if (r.num_ == 0) return Dyadic::zero();
    if (r.exp_ > 62) throw Error("dyadic exponent overflow in multiplication");
    r.normalize();
    return r;
  }
  return Dyadic(num_ * o.num_, e);
}

bool Dyadic::operator<(const Dyadic& o) const {
  uint64_t na, nb;
  uint32_t e;
  align(*this, o, na, nb, e);
  return na < nb;
}

uint64_t Dyadic::floor_scaled(uint32_t k) const {
  if (k >= exp_) {
    uint32_t s = k - exp_;
    if (s > 62 || (num_ >> (63 - s)) != 0) throw Error("dyadic scale overflow");
    return num_ << s;
  }
  return num_ >> (exp_ - k);
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(uint64_t(1) << exp_);
}

}  // namespace leb
