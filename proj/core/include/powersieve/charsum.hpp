#pragma once

#include <map>

#include "powersieve/field.hpp"
#include "powersieve/geometry.hpp"
#include "powersieve/multipoly.hpp"
#include "powersieve/weight.hpp"

namespace powersieve {

struct SumReport {
  std::complex<double> value{0, 0};
  uint64_t modulus = 0;
  uint64_t term_count = 0;
  double normalized = 0;               // |value| / reference scale
  std::vector<double> bound_terms;     // components of the comparison bound
  double ratio = 0;                    // |value| / sum(bound_terms)
};

// T(q1, q2) = sum_x w_B(x) chi_{q1}(f(x)) chi_{q2}(f(x)), exact-angle
// accumulation over the support box. chi_{q1} must be non-principal and
// gcd(q1, q2) = 1, B >= q2. bound_terms holds
// B^{n/2} q1^{1/2} q2^{n/2},  B^{n/2} q1^{(n+2)/4},  B^n p^{-(n-2)/4}.
SumReport T_full(const MultiPoly& f, const Character& chi1,
                 const Character& chi2, long long B, const BumpWeight& w,
                 Budget& budget);

// One differencing correlation:
// S(h1, h2) = sum_x chi_{q1}(f(x+q2 h1)) conj(chi_{q1}(f(x+q2 h2)))
//             * w_B(x+q2 h1) w_B(x+q2 h2).
std::complex<double> vdc_correlation(const MultiPoly& f, const Character& chi1,
                                     long long q2, std::span<const long long> h1,
                                     std::span<const long long> h2, long long B,
                                     const BumpWeight& w, Budget& budget);

// The full differencing chain with H = floor(B/q2):
//   H^n T = sum_h sum_x ...                        (exact identity)
//   H^{2n} |T|^2 <= Sigma1 * Sigma2                (Cauchy-Schwarz, C = 1)
//   Sigma2 <= Sigma2A + Sigma2B, Sigma2B <= H^n sum_{h != 0} |T(h)|.
struct VdcDecomposition {
  long long H = 0;
  std::complex<double> T{0, 0};
  double Sigma1 = 0;       // #{x : gcd(f(x), q2) = 1} over the widened box
  double Sigma2 = 0;       // strict inner-square sum (coprimality kept)
  double Sigma2A = 0;      // H^n * S(0,0)
  double Sigma2B = 0;      // sum_{h != 0} prod_j (H - |h_j|) S(h, 0)
  double sum_abs_T_h = 0;  // sum_{h != 0} |T(h)|
  std::map<std::vector<long long>, std::complex<double>> T_h;
  double cauchy_lhs = 0, cauchy_rhs = 0;   // H^{2n}|T|^2 vs Sigma1*Sigma2
  bool cauchy_ok = false;
  bool sigma2B_bound_ok = false;           // Sigma2B <= H^n sum|T(h)|
  double shift_identity_max_relerr = 0;    // S(h1,h2) = S(h1-h2, 0)
  double th_equals_corr_max_relerr = 0;    // T(h) recomputed two ways
};

VdcDecomposition vdc_decompose(const MultiPoly& f, const Character& chi1,
                               const Character& chi2, long long B,
                               const BumpWeight& w, Budget& budget,
                               uint64_t seed, int shift_identity_samples = 20);

// Complete sum over F_p^n: sum_x e_p(a h(x) + b g(x) + v.x).
// normalized = |value| / p^{n/2}.
SumReport mixed_complete_sum(uint64_t p, const MultiPoly& h, const MultiPoly& g,
                             uint64_t a, uint64_t b,
                             std::span<const uint64_t> v, Budget& budget);

// S_q(v) = sum over z mod q with q | h(z), gcd(g(z), q) = 1 of e_q(v.z).
// q is a prime or product of distinct primes (evaluated directly mod q).
SumReport incomplete_divisor_sum(const std::vector<uint64_t>& q_factors,
                                 const MultiPoly& h, const MultiPoly& g,
                                 std::span<const long long> v, Budget& budget);

struct MultiplicativityReport {
  std::complex<double> direct{0, 0};   // S_{p1 p2}(v)
  std::complex<double> product{0, 0};  // S_{p1}(v) S_{p2}(v)
  double relerr = 0;
  bool ok = false;
};

MultiplicativityReport multiplicativity_check(uint64_t p1, uint64_t p2,
                                              const MultiPoly& h,
                                              const MultiPoly& g,
                                              std::span<const long long> v,
                                              Budget& budget);

// Poisson main-term identity: S = sum_{q|h(x), (g(x),q)=1} W(x/L) against
// q^{-2} phi(q) sum_x W(x/L), residual normalized by
// Delta (L^s q^{(n-s)/2} + L^n p^{(s-n+2)/2} / q).
struct PoissonReport {
  uint64_t q = 0;
  int s = -1;             // min over prime factors of the singular-locus dim
  double S = 0;
  double main_term = 0;
  double residual = 0;
  double bound = 0;       // the normalizer above
  double ratio = 0;
  bool hypotheses_ok = true;
  std::string note;
};

PoissonReport poisson_identity_check(const std::vector<uint64_t>& q_factors,
                                     const MultiPoly& h, const MultiPoly& g,
                                     const Window& W, double L, Budget& budget);

// Empirical implied constant for the T(q1,q2) bound over a grid.
struct Prop1Entry {
  uint64_t q1 = 0, q2 = 0;
  long long B = 0;
  double abs_T = 0;
  double rhs = 0;
  double ratio = 0;
};

struct Prop1Report {
  std::vector<Prop1Entry> entries;
  double max_ratio = 0;
};

struct Prop1GridPoint {
  Character chi1, chi2;
  long long B;
};

Prop1Report proposition1_constant(const MultiPoly& f,
                                  std::span<const Prop1GridPoint> grid,
                                  const BumpWeight& w, Budget& budget);

}  // namespace powersieve
