#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "powersieve/turn.hpp"

namespace powersieve {

bool is_prime(uint64_t n);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t mod);
uint64_t inv_mod(uint64_t a, uint64_t mod);  // requires gcd(a, mod) = 1
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);
int nu_distinct_prime_divisors(long long n);  // n != 0

// Primes p in (lo, hi], ascending.
std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi);
// Primes p in (lo, hi] with p == 1 (mod r), ascending.
std::vector<uint64_t> primes_one_mod_r(uint64_t lo, uint64_t hi, uint64_t r);

// Smallest positive primitive root mod p. Throws InvalidInput if p is not
// prime. primitive_root(2) == 1.
uint64_t primitive_root(uint64_t p);

// e^{2 pi i t / p} with the angle kept exact as (t mod p)/p.
Turn additive_char_turn(uint64_t p, long long t);
std::complex<double> additive_char(uint64_t p, long long t);

// The power residue character of order r mod a prime p == 1 (mod r):
// chi(g^e) = e((e mod r)/r) for the fixed smallest primitive root g,
// chi(n) = 0 when p | n. chi(m^r) = 1 for all m coprime to p.
class PowerCharacter {
 public:
  PowerCharacter(uint64_t p, uint64_t r);

  uint64_t modulus() const { return p_; }
  uint64_t order() const { return r_; }
  uint64_t generator() const { return g_; }

  CharValue operator()(long long n) const;
  uint64_t dlog(uint64_t a) const;  // a in [1, p)

 private:
  uint64_t p_, r_, g_;
  std::vector<uint32_t> table_;  // full dlog table when p < 2^20
};

// Finite product of power characters (with integer exponents, so conjugates
// and non-squarefree moduli like v*v are representable). chi_q(n) is the
// product of the factor values; modulus is the product of factor moduli
// counted with multiplicity.
class Character {
 public:
  Character() = default;
  explicit Character(PowerCharacter chi) { factors_.emplace_back(chi, 1); }

  Character times(const Character& o) const;
  Character conj() const;
  CharValue operator()(long long n) const;

  uint64_t modulus() const;
  // true when every prime's net character exponent is 0 mod its order
  bool is_principal() const;
  // lcm of factor orders: all values are D-th roots of unity
  long long angle_denominator() const;
  const std::vector<std::pair<PowerCharacter, int>>& factors() const {
    return factors_;
  }
  std::vector<uint64_t> prime_factors() const;

 private:
  std::vector<std::pair<PowerCharacter, int>> factors_;
};

// chi_{p1} * chi_{p2} * ... for pairwise distinct primes pi == 1 (mod r).
Character composite_character(const std::vector<uint64_t>& primes, uint64_t r);

}  // namespace powersieve
