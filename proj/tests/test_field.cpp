#include <doctest.h>

#include <complex>

#include "powersieve/field.hpp"

using namespace powersieve;

TEST_CASE("prime enumeration filtered by residue class") {
  CHECK(primes_one_mod_r(21, 43, 2) ==
        std::vector<uint64_t>{23, 29, 31, 37, 41, 43});
  CHECK(primes_one_mod_r(2, 3, 2) == std::vector<uint64_t>{3});
  CHECK(primes_one_mod_r(2, 12, 3) == std::vector<uint64_t>{7});
  CHECK(primes_one_mod_r(21, 43, 3) == std::vector<uint64_t>{31, 37, 43});
}

TEST_CASE("smallest primitive roots") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(13) == 2);
  CHECK_THROWS_AS(primitive_root(8), InvalidInput);
}

TEST_CASE("nu counts distinct prime divisors") {
  CHECK(nu_distinct_prime_divisors(12) == 2);
  CHECK(nu_distinct_prime_divisors(1) == 0);
  CHECK(nu_distinct_prime_divisors(30) == 3);
  CHECK(nu_distinct_prime_divisors(-30) == 3);
  CHECK_THROWS_AS(nu_distinct_prime_divisors(0), InvalidInput);
}

TEST_CASE("power character values") {
  PowerCharacter chi(7, 3);
  CHECK(chi.generator() == 3);
  // 2 = 3^2 mod 7, so chi(2) = e(2/3)
  CharValue v = chi(2);
  CHECK(!v.is_zero);
  CHECK(v.turn == Turn(2, 3));
  // 6 = 3^3 is a cube
  CHECK(chi(6).turn == Turn(0, 1));
  CHECK(chi(1).turn == Turn(0, 1));
  CHECK(chi(14).is_zero);
}

TEST_CASE("additive character angles") {
  CHECK(additive_char(5, 0) == std::complex<double>(1, 0));
  CHECK(additive_char(5, 5) == std::complex<double>(1, 0));
  CHECK(std::abs(additive_char(4, 1) - std::complex<double>(0, 1)) < 1e-15);
}

TEST_CASE("character multiplicativity and cube detection mod 7") {
  PowerCharacter chi(7, 3);
  for (long long m = 1; m < 7; ++m)
    for (long long n = 1; n < 7; ++n) {
      CharValue lhs = chi(m * n);
      CharValue rhs = chi(m) * chi(n);
      CHECK(lhs.turn == rhs.turn);
    }
  for (long long m = 1; m < 7; ++m) CHECK(chi(m * m * m).turn == Turn(0, 1));
}

TEST_CASE("composite character multiplies factor values") {
  Character chi = composite_character({7, 13}, 3);
  CHECK(chi.modulus() == 91);
  CHECK(chi.angle_denominator() == 3);
  CHECK(!chi.is_principal());
  CHECK(chi(7).is_zero);
  CHECK(chi(13).is_zero);
  PowerCharacter c7(7, 3), c13(13, 3);
  for (long long n = 1; n < 91; ++n) {
    if (n % 7 == 0 || n % 13 == 0) continue;
    CHECK(chi(n).turn == (c7(n) * c13(n)).turn);
  }
  // chi * conj(chi) is principal
  CHECK(chi.times(chi.conj()).is_principal());
}

TEST_CASE("composite character rejects repeated primes") {
  CHECK_THROWS_AS(composite_character({7, 7}, 3), InvalidInput);
}
