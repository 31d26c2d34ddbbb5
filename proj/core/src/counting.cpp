#include "powersieve/counting.hpp"

#include <cmath>
#include <numeric>

namespace powersieve {

int rth_power_solutions(const mpz_class& v, int r, mpz_class* root) {
  if (r < 2) throw InvalidInput("power index r must be >= 2");
  if (v == 0) {
    if (root) *root = 0;
    return 1;
  }
  bool even = (r % 2 == 0);
  if (even && v < 0) return 0;
  mpz_class a = v < 0 ? mpz_class(-v) : v;
  mpz_class rt;
  int exact = mpz_root(rt.get_mpz_t(), a.get_mpz_t(), (unsigned long)r);
  if (!exact) return 0;
  if (v < 0) rt = -rt;
  if (root) *root = rt;
  return even ? 2 : 1;
}

CountReport weighted_count(const MultiPoly& f, int r, long long B,
                           const BumpWeight& w, Budget& budget) {
  if (B < 1) throw InvalidInput("B must be >= 1");
  if (r < 2) throw InvalidInput("r must be >= 2");
  CountReport rep;
  rep.B = B;
  rep.r = r;
  rep.poly = f.str();
  Kahan weighted, zero;
  long long pairs = 0;
  for_each_box_point(f.nvars(), -B, B, budget, [&](std::span<const long long> x) {
    mpz_class v = f.eval_int(x);
    int mult = rth_power_solutions(v, r);
    if (mult == 0) return;
    double wb = w.value_scaled(x, double(B));
    pairs += mult;
    weighted.add(mult * wb);
    if (v == 0) zero.add(wb);
  });
  rep.exact_count = pairs;
  rep.weighted_count = weighted.sum();
  rep.zero_count = zero.sum();
  return rep;
}

double zero_locus_count(const MultiPoly& f, long long B, const BumpWeight& w,
                        Budget& budget) {
  if (B < 1) throw InvalidInput("B must be >= 1");
  Kahan acc;
  for_each_box_point(f.nvars(), -B, B, budget, [&](std::span<const long long> x) {
    if (f.eval_int(x) == 0) acc.add(w.value_scaled(x, double(B)));
  });
  return acc.sum();
}

long long height_count_cyclic_cover(const MultiPoly& F, int m, int r,
                                    long long B, Budget& budget) {
  if (!F.is_homogeneous() || F.is_zero())
    throw InvalidInput("cyclic cover needs a nonzero homogeneous form");
  if (F.degree() != m * r)
    throw InvalidInput("form degree must equal m*r");
  if (B < 0) throw InvalidInput("B must be >= 0");
  if (B == 0) return 0;
  long long count = 0;
  for_each_box_point(F.nvars(), -B, B, budget, [&](std::span<const long long> x) {
    // primitive representative: gcd 1, first nonzero coordinate positive
    long long g = 0;
    long long first = 0;
    for (long long xi : x) {
      if (first == 0) first = xi;
      g = std::gcd(g, xi < 0 ? -xi : xi);
    }
    if (g != 1 || first <= 0) return;
    if (rth_power_solutions(F.eval_int(x), r) > 0) ++count;
  });
  return count;
}

Rational reference_exponent(int n, RefExponent kind) {
  if (n < 2) throw InvalidInput("reference exponents need n >= 2");
  Rational N(n);
  switch (kind) {
    case RefExponent::theorem1_high:
      return N - Rational(3 * n, 2 * n + 10);
    case RefExponent::theorem1_low:
      return N - Rational((long long)n * (n - 2), 6 * n + 4);
    case RefExponent::munshi:
      return N - Rational(n, n + 1);
    case RefExponent::serre:
      return Rational(n - 1);
  }
  throw InvalidInput("unknown exponent kind");
}

double exponent_fit(std::span<const std::pair<double, double>> counts) {
  if (counts.size() < 3)
    throw InvalidInput("exponent fit needs at least 3 data points");
  double prev = 0;
  for (const auto& [B, N] : counts) {
    if (B <= prev) throw InvalidInput("exponent fit needs increasing B");
    if (N <= 0) throw InvalidInput("exponent fit needs positive counts");
    prev = B;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double k = double(counts.size());
  for (const auto& [B, N] : counts) {
    double x = std::log(B), y = std::log(N);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace powersieve
