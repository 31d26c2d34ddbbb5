#pragma once

#include <map>

#include "powersieve/multipoly.hpp"

namespace powersieve {

// Affine dimension of a singular locus, estimated by point counts over
// F_{p^k}, k <= 3. exact is set when the counts fit c * p^{ks} for the
// estimated integer s within a factor of 4 at every k.
struct SingularLocusReport {
  uint64_t p = 0;
  std::vector<uint64_t> counts;  // counts over F_{p^k}, k = 1..max_k used
  int dim_estimate = 0;
  bool exact = false;
};

// gamma and the leading form H of h - gamma*g over F_p. gamma is the unique
// residue making deg(h - gamma g) < deg g, given that the leading form of h
// is proportional to that of g (or deg h < deg g).
struct GammaForm {
  uint64_t gamma = 0;
  MultiPoly H_form;
  int deg_H = 0;
  bool degree_flagged = false;  // deg_H < 2: downstream hypotheses fail
};

GammaForm compute_gamma(const MultiPoly& h, const MultiPoly& g, uint64_t p);

// Counts points of {H = 0, grad H = 0} over F_{p^k} for k = 1..max_k
// (clamped by the point budget) and estimates the affine dimension from the
// growth of the counts. H must be homogeneous of degree >= 2.
SingularLocusReport singular_locus_dim(const MultiPoly& H_form, uint64_t p,
                                       int max_k, Budget& budget);

// Dimension estimate from a count sequence (k = 1..K over F_{p^k}).
int dim_from_counts(std::span<const uint64_t> counts, uint64_t p, int nvars,
                    bool* exact = nullptr);

// s(h . grad F; p): the singular-locus dimension of the degree (d-1) form
// h . grad F. Returns n when h == 0 mod p (the variety is all of A^n).
int s_of_h(const MultiPoly& F, std::span<const long long> h, uint64_t p,
           Budget& budget);

// Histogram of s over all nonzero h in [-H_box, H_box]^n, with the ratios
// count / (H_box^{n-s} + H_box^n p^{-s}).
struct Lemma3Report {
  std::map<int, long long> histogram;
  std::map<int, double> ratios;
  long long total = 0;  // must equal (2 H_box + 1)^n - 1
  int max_k_used = 0;
};

Lemma3Report lemma3_histogram(const MultiPoly& F, long long H_box, uint64_t p,
                              Budget& budget);

// Lattice points of [-R, R]^n reducing into V_p for every p | q, against
// R^n q^{k-n} + R^k.
struct Lemma4Report {
  long long count = 0;
  double bound = 0;
  double ratio = 0;
};

Lemma4Report lemma4_count_check(std::span<const MultiPoly> defining,
                                const std::vector<uint64_t>& q_factors,
                                long long R, int k, Budget& budget);

// Counts h in F_p^n whose variety {x : hess F(x) . h = 0} has estimated
// dimension >= s, against p^{n-s}.
struct Lemma6Report {
  long long qualifying = 0;
  double bound = 0;
  double ratio = 0;
  int s = 0;
  int max_k_used = 0;
};

Lemma6Report lemma6_Ts_check(const MultiPoly& F, uint64_t p, int s,
                             Budget& budget);

}  // namespace powersieve
