#include <doctest.h>

#include "powersieve/sieve.hpp"

using namespace powersieve;

TEST_CASE("sieve set windows") {
  SieveSets s = build_sieve_sets(100, 1.0, 2.0 / 3, 2);
  CHECK(s.U_set == std::vector<uint64_t>{23, 29, 31, 37, 41, 43});
  CHECK(s.V_set == std::vector<uint64_t>{5, 7});
  SieveSets s3 = build_sieve_sets(100, 1.0, 2.0 / 3, 3);
  CHECK(s3.U_set == std::vector<uint64_t>{31, 37, 43});
  SieveSets tiny = build_sieve_sets(4, 1.0, 0.99, 2);
  CHECK(tiny.degenerate);
}

TEST_CASE("sieve weight from a polynomial") {
  BumpWeight w;
  Budget budget;
  SieveWeight omega = sieve_weight_from_poly(MultiPoly::parse("x1", 1), 2, w,
                                             budget);
  for (long long k = -2; k <= 2; ++k) {
    std::vector<long long> x{k};
    CHECK(omega.at(k) == doctest::Approx(w.value_scaled(x, 2.0)).epsilon(1e-12));
  }
  CHECK(omega.at(3) == 0.0);

  SieveWeight o2 = sieve_weight_from_poly(MultiPoly::parse("x1^2+x2^2", 2), 1,
                                          w, budget);
  std::vector<long long> z{0, 0}, e1{1, 0}, c{1, 1};
  CHECK(o2.at(0) == doctest::Approx(w.value_scaled(z, 1.0)).epsilon(1e-12));
  CHECK(o2.at(1) ==
        doctest::Approx(4 * w.value_scaled(e1, 1.0)).epsilon(1e-12));
  CHECK(o2.at(2) == doctest::Approx(4 * w.value_scaled(c, 1.0)).epsilon(1e-12));
}

TEST_CASE("decomposition identity on simple weights") {
  SieveSets sets = make_sieve_sets({13, 17}, {5}, 2);
  SieveWeight omega;
  for (long long n = 1; n <= 10; ++n) omega.support[n] = 1.0;
  SigmaReport rep = sigma_decomposition(omega, sets);
  CHECK(rep.identity_relerr < 1e-12);
  CHECK(rep.sv_split_relerr < 1e-12);

  SieveWeight zero;
  SigmaReport rz = sigma_decomposition(zero, sets);
  CHECK(rz.Sigma == 0.0);
  CHECK(rz.diagonal == 0.0);
}

TEST_CASE("decomposition identity on seeded random weights") {
  SplitMix64 rng(0x5eed0002);
  for (int trial = 0; trial < 100; ++trial) {
    int r = 2 + int(rng.below(2));  // r in {2, 3}
    std::vector<uint64_t> primes =
        r == 2 ? std::vector<uint64_t>{5, 13, 17, 29, 37}
               : std::vector<uint64_t>{7, 13, 19, 31, 37};
    // split into nonempty disjoint U, V
    size_t cut = 1 + rng.below(primes.size() - 1);
    std::vector<uint64_t> U(primes.begin(), primes.begin() + long(cut));
    std::vector<uint64_t> V(primes.begin() + long(cut), primes.end());
    SieveSets sets = make_sieve_sets(U, V, r);
    SieveWeight omega;
    int supp = 1 + int(rng.below(200));
    for (int i = 0; i < supp; ++i)
      omega.support[rng.range(-100, 100)] = rng.unit();
    SigmaReport rep = sigma_decomposition(omega, sets);
    CHECK(rep.identity_relerr < 1e-9);
    CHECK(rep.sv_split_relerr < 1e-9);
  }
}

TEST_CASE("sieve inequality on point masses") {
  SieveSets sets = make_sieve_sets({13, 17}, {5}, 2);
  SieveWeight omega;
  omega.support[1] = 1.0;
  SieveInequalityReport rep = verify_sieve_inequality(omega, sets);
  CHECK(rep.lhs == doctest::Approx(2.0).epsilon(1e-12));  // n = +-1
  CHECK(rep.trivial_term ==
        doctest::Approx(1.0 / double(sets.A)).epsilon(1e-12));
  CHECK(rep.lhs <= rep.C_measured * rep.rhs + 1e-12);

  // wider sets so exp(min(U, V)) clears the support of this weight
  SieveSets wide =
      make_sieve_sets({13, 17, 29, 37, 41, 53, 61, 73}, {5, 97}, 2);
  SieveWeight nopower;
  nopower.support[7] = 1.0;  // 7 is not a square
  SieveInequalityReport r2 = verify_sieve_inequality(nopower, wide);
  CHECK(r2.lhs == 0.0);
  CHECK(r2.rhs >= 0.0);
}

TEST_CASE("support bound is checked and overridable") {
  SieveSets sets = make_sieve_sets({13, 17}, {5}, 2);
  SieveWeight far;
  far.support[1000000] = 1.0;  // way past exp(min(U, V))
  CHECK_THROWS_AS(verify_sieve_inequality(far, sets), InvalidInput);
  SieveInequalityReport rep = verify_sieve_inequality(far, sets, true);
  CHECK(!rep.hypotheses_ok);
}
