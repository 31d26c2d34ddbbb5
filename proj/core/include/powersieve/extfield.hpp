#pragma once

#include <array>
#include <cstdint>

#include "powersieve/common.hpp"

namespace powersieve {

// F_{p^k} for k in {1,2,3}, elements as coefficient vectors of length k
// (low degree first) modulo a fixed monic irreducible. The modulus is the
// lexicographically smallest monic irreducible of degree k, so fields are
// deterministic. Sized for exhaustive point loops, not cryptography.
class ExtField {
 public:
  using Elem = std::array<uint64_t, 3>;

  static ExtField build(uint64_t p, int k, uint64_t point_cap = 10'000'000);

  uint64_t p() const { return p_; }
  int k() const { return k_; }
  uint64_t size() const { return size_; }
  // modulus x^k + mod[k-1] x^{k-1} + ... + mod[0]
  const std::array<uint64_t, 3>& modulus() const { return mod_; }

  Elem zero() const { return {0, 0, 0}; }
  Elem one() const { return {1 % p_, 0, 0}; }
  Elem from_int(uint64_t c) const { return {c % p_, 0, 0}; }
  // element with base-p digits of idx as coefficients; idx in [0, p^k)
  Elem from_index(uint64_t idx) const;
  uint64_t to_index(const Elem& a) const;

  bool is_zero(const Elem& a) const { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scalar_mul(uint64_t c, const Elem& a) const;
  Elem pow(Elem a, uint64_t e) const;
  // Frobenius x -> x^p
  Elem frobenius(const Elem& a) const { return pow(a, p_); }

 private:
  ExtField(uint64_t p, int k, std::array<uint64_t, 3> mod);

  uint64_t p_;
  int k_;
  uint64_t size_;
  std::array<uint64_t, 3> mod_;
};

}  // namespace powersieve
