#pragma once

#include <cstdint>
#include <vector>

#include "leb/term.hpp"

namespace leb {
namespace tl {

// Closed T0 combinator terms for everyday arithmetic. Each is built once and
// cached. Conventions: characteristic values use 0 for "true"/membership.
const Term& add();      // 0->0->0   a+b
const Term& pred();     // 0->0
const Term& monus();    // 0->0->0   a-b truncated
const Term& sg();       // 0->0      0|->0, m+1|->1
const Term& cosg();     // 0->0      1 - sg
const Term& tmin();     // 0->0->0
const Term& tmax();     // 0->0->0
const Term& mul();      // 0->0->0
const Term& absdiff();  // 0->0->0   |a-b|
const Term& half();     // 0->0      floor(n/2)
const Term& pow2();     // 0->0      2^k
const Term& div_pow2(); // 0->0->0   n div 2^j
const Term& mod2();     // 0->0
const Term& lt_char();  // 0->0->0   0 iff a < b

// Bit-string codes: a string b0..b(L-1) is the number 2^L + sum b_i 2^i.
const Term& seq_lth();  // 0->0      L  (linear scans; fine for short codes)
const Term& seq_get();  // 0->0->0   (s)_i
uint64_t seq_code(const std::vector<uint8_t>& bits);
std::vector<uint8_t> seq_decode(uint64_t code);

// Bounded search: least j < m with g(j) = 0, else 0 (mirrors the mu default).
const Term& bounded_mu();  // 0->(0->0)->0

// Prefix-coding of a number onto an oracle: f'(0) = x, f'(n+1) = f(n).
const Term& cons_oracle();  // 0->(0->0)->(0->0)

// Applications of the helpers.
Term apply2(const Term& f, const Term& a, const Term& b);

// The type-1 term for a finite 0/1 string, 0 beyond its length.
Term oracle_term(const std::vector<uint8_t>& bits);

// Constant type-1 function.
Term const_fn(uint64_t value);

// Cantor pairing (C++ side).
uint64_t cantor_pair(uint64_t a, uint64_t b);
std::pair<uint64_t, uint64_t> cantor_unpair(uint64_t n);

}  // namespace tl
}  // namespace leb
