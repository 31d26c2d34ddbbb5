#pragma once

#include <map>

#include "powersieve/counting.hpp"
#include "powersieve/field.hpp"

namespace powersieve {

// The two sieving prime sets: U in (Q^alpha, 2Q^alpha], V in
// (Q^{1-alpha}, 2Q^{1-alpha}], all primes == 1 (mod r), disjoint, and the
// almost-prime moduli A = {uv}.
struct SieveSets {
  double Q = 0;
  double alpha = 0;
  int r = 0;
  std::vector<uint64_t> U_set, V_set;
  std::vector<PowerCharacter> U_chars, V_chars;
  size_t U = 0, V = 0, A = 0;  // A = U*V
  bool degenerate = false;     // empty U or V
  bool v_cubed_ok = false;     // V^3 <= A
};

SieveSets build_sieve_sets(long long B, double delta, double alpha, int r);
// Direct construction from explicit prime sets (for synthetic fixtures).
SieveSets make_sieve_sets(std::vector<uint64_t> U, std::vector<uint64_t> V,
                          int r);

// Finitely supported non-negative weight n -> omega(n).
struct SieveWeight {
  std::map<long long, double> support;

  double at(long long n) const {
    auto it = support.find(n);
    return it == support.end() ? 0.0 : it->second;
  }
  double total() const {
    Kahan k;
    for (auto& [n, w] : support) {
      (void)n;
      k.add(w);
    }
    return k.sum();
  }
  long long max_abs_support() const {
    long long m = 0;
    for (auto& [n, w] : support) {
      (void)w;
      m = std::max(m, n < 0 ? -n : n);
    }
    return m;
  }
};

// omega(n) = sum over f(x) = n of w_B(x); exactly sum omega = sum w_B.
SieveWeight sieve_weight_from_poly(const MultiPoly& f, long long B,
                                   const BumpWeight& w, Budget& budget);

// The exact decomposition of Sigma = sum_n omega(n) |sum_{q in A} chi_q(n)|^2
// into diagonal + coprime off-diagonal + S(U) + S(V), with S(V) = M(V) - E(V).
// All terms computed literally from their definitions; the two identities are
// reported as relative errors, not assumed.
struct SigmaReport {
  double Sigma = 0;
  double diagonal = 0;
  double coprime = 0;
  double S_U = 0;
  double S_V = 0;
  double M_V = 0;
  double E_V = 0;
  double identity_relerr = 0;  // Sigma vs diagonal + coprime + S_U + S_V
  double sv_split_relerr = 0;  // S_V vs M_V - E_V
};

SigmaReport sigma_decomposition(const SieveWeight& omega, const SieveSets& sets);

// Lemma-style sieve inequality, all sides computed literally:
//   LHS = sum_{n != 0} omega(n^r)
//   RHS = trivial leading term + main sieve + prime sieve.
// Reports the smallest C with LHS <= C * RHS.
struct SieveInequalityReport {
  double lhs = 0;
  double trivial_term = 0;
  double main_sieve = 0;
  double prime_sieve = 0;
  double rhs = 0;
  double C_measured = 0;
  bool hypotheses_ok = true;  // V^3 <= A and the support bound
  std::string note;
};

SieveInequalityReport verify_sieve_inequality(const SieveWeight& omega,
                                              const SieveSets& sets,
                                              bool override_support = false);

}  // namespace powersieve
