#include <doctest.h>

#include <cmath>

#include "powersieve/counting.hpp"

using namespace powersieve;

namespace {

// Independent brute-force oracle for the weighted solution-pair count:
// loop y first, then x, testing f(x) == y^r directly.
double oracle_weighted(const MultiPoly& f, int r, long long B,
                       const BumpWeight& w, long long* pairs) {
  int n = f.nvars();
  // |f| <= max coefficient sum * B^d, so |y| <= that^(1/r); cheap overshoot
  mpz_class coef_sum = 0;
  for (const auto& [e, c] : f.terms()) coef_sum += abs(c);
  mpz_class fmax = coef_sum;
  for (int i = 0; i < f.degree(); ++i) fmax *= static_cast<long>(B);
  long long ymax = 1;
  while (mpz_class(long(ymax)) * long(ymax) <= fmax ||
         (r >= 3 && mpz_class(long(ymax)) * long(ymax) * long(ymax) <= fmax))
    ++ymax;
  double total = 0;
  long long count = 0;
  std::vector<long long> x(size_t(n), -B);
  while (true) {
    mpz_class v = f.eval_int(x);
    for (long long y = -ymax; y <= ymax; ++y) {
      mpz_class yr = 1;
      for (int i = 0; i < r; ++i) yr *= static_cast<long>(y);
      if (yr == v) {
        total += w.value_scaled(x, double(B));
        ++count;
      }
    }
    int i = 0;
    while (i < n && ++x[size_t(i)] > B) {
      x[size_t(i)] = -B;
      ++i;
    }
    if (i == n) break;
  }
  if (pairs) *pairs = count;
  return total;
}

}  // namespace

TEST_CASE("r-th power detection") {
  mpz_class root;
  CHECK(rth_power_solutions(16, 2, &root) == 2);
  CHECK(root * root == 16);
  CHECK(rth_power_solutions(0, 2) == 1);
  CHECK(rth_power_solutions(-8, 3, &root) == 1);
  CHECK(root == -2);
  CHECK(rth_power_solutions(-4, 2) == 0);
  CHECK(rth_power_solutions(7, 3) == 0);
}

TEST_CASE("weighted count matches the brute-force oracle") {
  BumpWeight w;
  Budget budget;
  for (auto [text, n] : {std::pair<const char*, int>{"x1", 1},
                         std::pair<const char*, int>{"x1^3+x2^3", 2}}) {
    MultiPoly f = MultiPoly::parse(text, n);
    for (int r : {2, 3}) {
      long long B = n == 1 ? 4 : 10;
      CountReport rep = weighted_count(f, r, B, w, budget);
      long long pairs = 0;
      double want = oracle_weighted(f, r, B, w, &pairs);
      CHECK(rep.exact_count == pairs);
      CHECK(rep.weighted_count == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("constant perfect square counts every point twice") {
  BumpWeight w;
  Budget budget;
  MultiPoly one = MultiPoly::parse("1", 2);
  CountReport rep = weighted_count(one, 2, 1, w, budget);
  // y = +-1 solve y^2 = 1 for every x in [-1,1]^2
  CHECK(rep.exact_count == 2 * 9);
  Kahan k;
  for (long long a = -1; a <= 1; ++a)
    for (long long b = -1; b <= 1; ++b) {
      std::vector<long long> x{a, b};
      k.add(2 * w.value_scaled(x, 1.0));
    }
  CHECK(rep.weighted_count == doctest::Approx(k.sum()).epsilon(1e-12));
}

TEST_CASE("zero locus weight") {
  BumpWeight w;
  Budget budget;
  MultiPoly f = MultiPoly::parse("x1^3+x2^3", 2);
  double z = zero_locus_count(f, 5, w, budget);
  Kahan k;
  for (long long a = -5; a <= 5; ++a) {
    std::vector<long long> x{a, -a};
    k.add(w.value_scaled(x, 5.0));
  }
  CHECK(z == doctest::Approx(k.sum()).epsilon(1e-12));
  CHECK(zero_locus_count(MultiPoly::parse("1", 2), 5, w, budget) == 0.0);
}

TEST_CASE("projective point count on a small conic bundle") {
  Budget budget;
  MultiPoly F = MultiPoly::parse("x1^2+x2^2", 2);
  CHECK(height_count_cyclic_cover(F, 1, 2, 1, budget) == 2);
  CHECK(height_count_cyclic_cover(F, 1, 2, 0, budget) == 0);
}

TEST_CASE("projective count bounded by the affine weighted count") {
  BumpWeight w;
  for (const char* text : {"x1^3+x2^3"}) {
    MultiPoly F = MultiPoly::parse(text, 2);
    for (long long B : {5, 10}) {
      Budget budget;
      long long nb = height_count_cyclic_cover(F, 1, 3, B, budget);
      CountReport rep = weighted_count(F, 3, 2 * B, w, budget);
      CHECK(double(nb) <= rep.weighted_count + 1e-9);
    }
  }
}

TEST_CASE("reference exponents") {
  CHECK(reference_exponent(9, RefExponent::theorem1_high) ==
        Rational(9) - Rational(27, 28));
  CHECK(reference_exponent(8, RefExponent::theorem1_high) ==
        reference_exponent(8, RefExponent::theorem1_low));
  CHECK(reference_exponent(8, RefExponent::theorem1_high) ==
        Rational(8) - Rational(12, 13));
  CHECK(reference_exponent(2, RefExponent::theorem1_low) == Rational(2));
  CHECK(reference_exponent(3, RefExponent::theorem1_low) ==
        Rational(3) - Rational(3, 22));
  CHECK(reference_exponent(3, RefExponent::serre) == Rational(2));
  CHECK(reference_exponent(3, RefExponent::munshi) ==
        Rational(3) - Rational(3, 4));
}

TEST_CASE("exponent fit recovers exact power laws") {
  std::vector<std::pair<double, double>> sq{{10, 100}, {20, 400}, {40, 1600}};
  CHECK(exponent_fit(sq) == doctest::Approx(2.0).epsilon(1e-9));
  std::vector<std::pair<double, double>> cu{
      {10, 7e3}, {20, 7 * 8e3}, {40, 7 * 64e3}, {80, 7 * 512e3}};
  CHECK(exponent_fit(cu) == doctest::Approx(3.0).epsilon(1e-9));
  std::vector<std::pair<double, double>> two{{10, 1}, {20, 2}};
  CHECK_THROWS_AS(exponent_fit(two), InvalidInput);
}

TEST_CASE("counts are monotone in B") {
  BumpWeight w;
  MultiPoly f = MultiPoly::parse("x1^3+x2^3", 2);
  long long prev = -1;
  for (long long B : {5, 10, 15, 20}) {
    Budget budget;
    CountReport rep = weighted_count(f, 2, B, w, budget);
    CHECK(rep.exact_count >= prev);
    prev = rep.exact_count;
  }
}
