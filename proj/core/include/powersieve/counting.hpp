#pragma once

#include "powersieve/multipoly.hpp"
#include "powersieve/weight.hpp"

namespace powersieve {

struct CountReport {
  long long B = 0;
  int r = 0;
  std::string poly;
  long long exact_count = 0;    // (y, x) solution pairs with x in [-B, B]^n
  double weighted_count = 0;    // N_{w,B}(f)
  double zero_count = 0;        // omega(0)
};

// Iterates x over [-B, B]^n (an odometer; charges the budget per point)
// and calls visit(x).
template <typename Visit>
void for_each_box_point(int n, long long lo, long long hi, Budget& budget,
                        Visit&& visit) {
  std::vector<long long> x(size_t(n), lo);
  while (true) {
    budget.charge();
    visit(std::span<const long long>(x));
    int i = 0;
    while (i < n && ++x[size_t(i)] > hi) {
      x[size_t(i)] = lo;
      ++i;
    }
    if (i == n) break;
  }
}

// Number of integers y with y^r = v, and one representative root.
// Even r and v > 0 gives 2 (y and -y); v = 0 gives 1; odd r gives 0 or 1.
int rth_power_solutions(const mpz_class& v, int r, mpz_class* root = nullptr);

// Exact enumeration of N_{w,B}(f): each solution pair (y, x) contributes
// w_B(x) once per y.
CountReport weighted_count(const MultiPoly& f, int r, long long B,
                           const BumpWeight& w, Budget& budget);

// omega(0) = sum over f(x) = 0 of w_B(x).
double zero_locus_count(const MultiPoly& f, long long B, const BumpWeight& w,
                        Budget& budget);

// Number of primitive integer vectors x (first nonzero coordinate positive)
// with max|x_i| <= B such that F(x) = y^r has an integer solution.
// F must be homogeneous of degree m*r.
long long height_count_cyclic_cover(const MultiPoly& F, int m, int r,
                                    long long B, Budget& budget);

enum class RefExponent { theorem1_high, theorem1_low, munshi, serre };

// Exponent of B in the reference counting bounds, as an exact rational.
Rational reference_exponent(int n, RefExponent kind);

// Least-squares slope of log N against log B. Needs >= 3 increasing B.
double exponent_fit(std::span<const std::pair<double, double>> counts);

}  // namespace powersieve
