#include "powersieve/charsum.hpp"

#include <algorithm>
#include <cmath>

#include "powersieve/counting.hpp"

namespace powersieve {

namespace {

uint64_t totient_from_factors(const std::vector<uint64_t>& primes) {
  uint64_t phi = 1;
  for (uint64_t p : primes) phi *= p - 1;
  return phi;
}

// smallest prime factor entering the p^{-(n-2)/4} term: q1 itself when prime
uint64_t small_prime_of(const Character& chi) {
  auto ps = chi.prime_factors();
  if (ps.empty()) throw InvalidInput("character has no prime factors");
  return ps.front();
}

}  // namespace

SumReport T_full(const MultiPoly& f, const Character& chi1,
                 const Character& chi2, long long B, const BumpWeight& w,
                 Budget& budget) {
  if (chi1.is_principal() || chi1.factors().empty())
    throw InvalidInput("T(q1,q2) needs a non-principal chi_{q1}");
  uint64_t q1 = chi1.modulus();
  uint64_t q2 = chi2.modulus();
  if (std::gcd(q1, q2) != 1) throw InvalidInput("q1 and q2 must be coprime");
  if (B < (long long)q2) throw InvalidInput("T(q1,q2) needs B >= q2");
  int n = f.nvars();

  Character chi = chi1.times(chi2);
  AngleSum acc(chi.angle_denominator());
  uint64_t terms = 0;
  for_each_box_point(n, -B, B, budget, [&](std::span<const long long> x) {
    double wb = w.value_scaled(x, double(B));
    if (wb == 0.0) return;
    mpz_class v = f.eval_int(x);
    if (!v.fits_slong_p())
      throw InvalidInput("f value exceeds 64 bits inside T(q1,q2)");
    CharValue cv = chi(v.get_si());
    if (cv.is_zero) return;
    acc.add(cv, wb);
    ++terms;
  });

  SumReport rep;
  rep.value = acc.value();
  rep.modulus = q1 * q2;
  rep.term_count = terms;
  double p = double(small_prime_of(chi1));
  double Bn2 = std::pow(double(B), n / 2.0);
  rep.bound_terms = {
      Bn2 * std::sqrt(double(q1)) * std::pow(double(q2), n / 2.0),
      Bn2 * std::pow(double(q1), (n + 2) / 4.0),
      std::pow(double(B), double(n)) * std::pow(p, -(n - 2) / 4.0),
  };
  double total = rep.bound_terms[0] + rep.bound_terms[1] + rep.bound_terms[2];
  rep.ratio = std::abs(rep.value) / total;
  rep.normalized =
      std::abs(rep.value) / (Bn2 * std::sqrt(double(q1)) * std::pow(double(q2), n / 2.0));
  return rep;
}

std::complex<double> vdc_correlation(const MultiPoly& f, const Character& chi1,
                                     long long q2, std::span<const long long> h1,
                                     std::span<const long long> h2, long long B,
                                     const BumpWeight& w, Budget& budget) {
  int n = f.nvars();
  // support: both x + q2 h1 and x + q2 h2 inside [-B, B]^n
  std::vector<long long> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    lo[size_t(i)] = -B - q2 * std::max(h1[size_t(i)], h2[size_t(i)]);
    hi[size_t(i)] = B - q2 * std::min(h1[size_t(i)], h2[size_t(i)]);
  }
  AngleSum acc(chi1.angle_denominator());
  std::vector<long long> y1(static_cast<size_t>(n)), y2(static_cast<size_t>(n));
  // rectangular hull of the support; odometer over it
  std::vector<long long> x = lo;
  while (true) {
    budget.charge();
    for (int i = 0; i < n; ++i) {
      y1[size_t(i)] = x[size_t(i)] + q2 * h1[size_t(i)];
      y2[size_t(i)] = x[size_t(i)] + q2 * h2[size_t(i)];
    }
    double wb = w.value_scaled(y1, double(B)) * w.value_scaled(y2, double(B));
    if (wb != 0.0) {
      mpz_class v1 = f.eval_int(y1);
      mpz_class v2 = f.eval_int(y2);
      CharValue cv = chi1(v1.get_si()) * chi1(v2.get_si()).conj();
      acc.add(cv, wb);
    }
    int i = 0;
    while (i < n && ++x[size_t(i)] > hi[size_t(i)]) {
      x[size_t(i)] = lo[size_t(i)];
      ++i;
    }
    if (i == n) break;
  }
  return acc.value();
}

VdcDecomposition vdc_decompose(const MultiPoly& f, const Character& chi1,
                               const Character& chi2, long long B,
                               const BumpWeight& w, Budget& budget,
                               uint64_t seed, int shift_identity_samples) {
  uint64_t q1 = chi1.modulus();
  long long q2 = (long long)chi2.modulus();
  if (q2 > B) throw InvalidInput("differencing needs B >= q2 (H >= 1)");
  int n = f.nvars();
  VdcDecomposition dec;
  dec.H = B / q2;
  long long H = dec.H;

  dec.T = T_full(f, chi1, chi2, B, w, budget).value;

  // Sigma1: |chi_{q2}(f(x))|^2 over x in [-B - H q2, B - q2]^n
  {
    long long lo = -B - H * q2, hi = B - q2;
    Kahan s1;
    for_each_box_point(n, lo, hi, budget, [&](std::span<const long long> x) {
      mpz_class v = f.eval_int(x);
      s1.add(chi2(v.get_si()).abs2());
    });
    dec.Sigma1 = s1.sum();
  }

  // Sigma2 (strict): sum over x with (f(x), q2) = 1 of
  // |sum_{h in [1,H]^n} w_B(x + q2 h) chi_{q1}(f(x + q2 h))|^2
  {
    long long lo = -B - H * q2, hi = B - q2;
    Kahan s2;
    std::vector<long long> y(static_cast<size_t>(n));
    for_each_box_point(n, lo, hi, budget, [&](std::span<const long long> x) {
      mpz_class v = f.eval_int(x);
      if (chi2(v.get_si()).is_zero) return;
      KahanComplex inner;
      std::vector<long long> h(size_t(n), 1);
      while (true) {
        for (int i = 0; i < n; ++i)
          y[size_t(i)] = x[size_t(i)] + q2 * h[size_t(i)];
        double wb = w.value_scaled(y, double(B));
        if (wb != 0.0) {
          mpz_class fy = f.eval_int(y);
          inner.add(wb * chi1(fy.get_si()).value());
        }
        int i = 0;
        while (i < n && ++h[size_t(i)] > H) {
          h[size_t(i)] = 1;
          ++i;
        }
        if (i == n) break;
      }
      s2.add(std::norm(inner.sum()));
    });
    dec.Sigma2 = s2.sum();
  }

  // Sigma2A = H^n S(0,0); Sigma2B = sum_{h != 0} prod_j (H - |h_j|) S(h,0);
  // T(h) computed by the residue-class split mod q1 and cross-checked
  // against the correlation S(h,0).
  std::vector<long long> zero(size_t(n), 0);
  double Hn = std::pow(double(H), n);
  dec.Sigma2A = Hn * vdc_correlation(f, chi1, q2, zero, zero, B, w, budget).real();

  Kahan s2b, sum_abs;
  double th_err = 0;
  Budget th_budget(budget.cap());
  for_each_box_point(n, -(H - 0), H, th_budget, [&](std::span<const long long> h) {
    bool is_zero = true;
    for (long long hi : h) is_zero &= hi == 0;
    if (is_zero) return;
    std::complex<double> corr =
        vdc_correlation(f, chi1, q2, h, zero, B, w, budget);
    // literal residue-class form: T(h) = sum_k chi_{q1}(k) sum over x with
    // f(x + q2 h) == k f(x) (mod q1), (f(x), q1) = 1 of w_B(x+q2 h) w_B(x)
    AngleSum th(chi1.angle_denominator());
    std::vector<long long> y(static_cast<size_t>(n));
    for_each_box_point(n, -B - H * q2, B, budget,
                       [&](std::span<const long long> x) {
      double wb = w.value_scaled(x, double(B));
      if (wb == 0.0) return;
      for (int i = 0; i < n; ++i) y[size_t(i)] = x[size_t(i)] + q2 * h[size_t(i)];
      double wb2 = w.value_scaled(y, double(B));
      if (wb2 == 0.0) return;
      mpz_class fx = f.eval_int(x);
      long long fm = mpz_class(fx % mpz_class((unsigned long)q1)).get_si();
      if (fm < 0) fm += (long long)q1;
      if (std::gcd((uint64_t)fm, q1) != 1) return;
      mpz_class fy = f.eval_int(y);
      long long fym = mpz_class(fy % mpz_class((unsigned long)q1)).get_si();
      if (fym < 0) fym += (long long)q1;
      uint64_t k = mul_mod(uint64_t(fym), inv_mod(uint64_t(fm), q1), q1);
      th.add(chi1((long long)k), wb * wb2);
    });
    std::complex<double> t_h = th.value();
    dec.T_h[std::vector<long long>(h.begin(), h.end())] = t_h;
    th_err = std::max(th_err, rel_err(t_h, corr));
    sum_abs.add(std::abs(t_h));
    double prod = 1;
    for (long long hj : h) prod *= double(H - std::abs(hj));
    s2b.add(prod * corr.real());
  });
  dec.Sigma2B = s2b.sum();
  dec.sum_abs_T_h = sum_abs.sum();
  dec.th_equals_corr_max_relerr = th_err;

  dec.cauchy_lhs = std::pow(double(H), 2.0 * n) * std::norm(dec.T);
  dec.cauchy_rhs = dec.Sigma1 * dec.Sigma2;
  dec.cauchy_ok = dec.cauchy_lhs <= dec.cauchy_rhs * (1 + 1e-9);
  dec.sigma2B_bound_ok = dec.Sigma2B <= Hn * dec.sum_abs_T_h + 1e-9;

  // shift identity S(h1, h2) = S(h1 - h2, 0) on seeded pairs
  SplitMix64 rng(seed);
  double max_err = 0;
  for (int t = 0; t < shift_identity_samples; ++t) {
    std::vector<long long> h1(static_cast<size_t>(n)), h2(static_cast<size_t>(n)), d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      h1[size_t(i)] = rng.range(1, H);
      h2[size_t(i)] = rng.range(1, H);
      d[size_t(i)] = h1[size_t(i)] - h2[size_t(i)];
    }
    std::complex<double> a = vdc_correlation(f, chi1, q2, h1, h2, B, w, budget);
    std::complex<double> b = vdc_correlation(f, chi1, q2, d, zero, B, w, budget);
    max_err = std::max(max_err, rel_err(a, b));
  }
  dec.shift_identity_max_relerr = max_err;
  return dec;
}

SumReport mixed_complete_sum(uint64_t p, const MultiPoly& h, const MultiPoly& g,
                             uint64_t a, uint64_t b,
                             std::span<const uint64_t> v, Budget& budget) {
  if (!is_prime(p)) throw InvalidInput("complete sum needs prime p");
  int n = h.nvars();
  if (g.nvars() != n || int(v.size()) != n)
    throw InvalidInput("dimension mismatch");
  CompiledPolyModP hp(h.reduced_mod(p), p);
  CompiledPolyModP gp(g.reduced_mod(p), p);
  // bucket the count of each additive-character angle t/p; render once
  std::vector<uint64_t> bucket(size_t(p), 0);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.cap() / p) throw BudgetError("p^n exceeds budget");
    total *= p;
  }
  std::vector<uint64_t> x(static_cast<size_t>(n));
  for (uint64_t idx = 0; idx < total; ++idx) {
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = t % p;
      t /= p;
    }
    uint64_t phase = 0;
    if (a) phase = (phase + mul_mod(a % p, hp.eval(x), p)) % p;
    if (b) phase = (phase + mul_mod(b % p, gp.eval(x), p)) % p;
    for (int i = 0; i < n; ++i)
      phase = (phase + mul_mod(v[size_t(i)] % p, x[size_t(i)], p)) % p;
    ++bucket[size_t(phase)];
  }
  SumReport rep;
  KahanComplex acc;
  for (uint64_t t = 0; t < p; ++t)
    if (bucket[size_t(t)])
      acc.add(double(bucket[size_t(t)]) * additive_char(p, (long long)t));
  rep.value = acc.sum();
  rep.modulus = p;
  rep.term_count = total;
  rep.normalized = std::abs(rep.value) / std::pow(double(p), n / 2.0);
  return rep;
}

SumReport incomplete_divisor_sum(const std::vector<uint64_t>& q_factors,
                                 const MultiPoly& h, const MultiPoly& g,
                                 std::span<const long long> v, Budget& budget) {
  uint64_t q = 1;
  for (uint64_t p : q_factors) {
    if (!is_prime(p)) throw InvalidInput("q factors must be prime");
    q *= p;
  }
  int n = h.nvars();
  if (g.nvars() != n || int(v.size()) != n)
    throw InvalidInput("dimension mismatch");
  CompiledPolyModP hq(h.reduced_mod(q), q);
  CompiledPolyModP gq(g.reduced_mod(q), q);
  std::vector<uint64_t> bucket(size_t(q), 0);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.cap() / q) throw BudgetError("q^n exceeds budget");
    total *= q;
  }
  std::vector<uint64_t> z(static_cast<size_t>(n));
  for (uint64_t idx = 0; idx < total; ++idx) {
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      z[size_t(i)] = t % q;
      t /= q;
    }
    if (hq.eval(z) != 0) continue;
    if (std::gcd(gq.eval(z), q) != 1) continue;
    uint64_t phase = 0;
    for (int i = 0; i < n; ++i) {
      long long vi = v[size_t(i)] % (long long)q;
      if (vi < 0) vi += (long long)q;
      phase = (phase + mul_mod(uint64_t(vi), z[size_t(i)], q)) % q;
    }
    ++bucket[size_t(phase)];
  }
  SumReport rep;
  KahanComplex acc;
  for (uint64_t t = 0; t < q; ++t)
    if (bucket[size_t(t)])
      acc.add(double(bucket[size_t(t)]) * additive_char(q, (long long)t));
  rep.value = acc.sum();
  rep.modulus = q;
  rep.term_count = total;
  rep.normalized = std::abs(rep.value) / std::pow(double(q), n / 2.0);
  return rep;
}

MultiplicativityReport multiplicativity_check(uint64_t p1, uint64_t p2,
                                              const MultiPoly& h,
                                              const MultiPoly& g,
                                              std::span<const long long> v,
                                              Budget& budget) {
  if (p1 == p2) throw InvalidInput("multiplicativity needs distinct primes");
  MultiplicativityReport rep;
  rep.direct = incomplete_divisor_sum({p1, p2}, h, g, v, budget).value;
  std::complex<double> s1 = incomplete_divisor_sum({p1}, h, g, v, budget).value;
  std::complex<double> s2 = incomplete_divisor_sum({p2}, h, g, v, budget).value;
  rep.product = s1 * s2;
  rep.relerr = rel_err(rep.direct, rep.product);
  double scale = std::max(std::abs(rep.direct), std::abs(rep.product));
  rep.ok = scale < 1e-9 ? true : rep.relerr <= 1e-6;
  return rep;
}

PoissonReport poisson_identity_check(const std::vector<uint64_t>& q_factors,
                                     const MultiPoly& h, const MultiPoly& g,
                                     const Window& W, double L, Budget& budget) {
  PoissonReport rep;
  if (L < 1.0) throw InvalidInput("Poisson identity needs L >= 1");
  if (q_factors.empty() || q_factors.size() > 2)
    throw InvalidInput("q must be prime or a product of two primes");
  if (q_factors.size() == 2) {
    uint64_t p1 = std::min(q_factors[0], q_factors[1]);
    uint64_t p2 = std::max(q_factors[0], q_factors[1]);
    if (!(p1 < p2 && p2 < 2 * p1))
      throw InvalidInput("q = p1 p2 needs p1 < p2 < 2 p1");
  }
  uint64_t q = 1;
  for (uint64_t p : q_factors) q *= p;
  int n = h.nvars();
  if (g.degree() < 3) throw InvalidInput("needs deg g >= 3");

  // hypotheses: G nonsingular mod each factor; H = leading form of
  // h - gamma g has degree >= 2; s = min over factors of the locus dimension
  rep.s = n;
  for (uint64_t p : q_factors) {
    MultiPoly G = g.reduced_mod(p).leading_form();
    Budget geo(budget.cap());
    if (!is_nonsingular_form_mod_p(g.leading_form(), p, geo)) {
      rep.hypotheses_ok = false;
      rep.note = "leading form of g singular mod " + std::to_string(p);
      return rep;
    }
    GammaForm gf = compute_gamma(h, g, p);
    if (gf.degree_flagged) {
      rep.hypotheses_ok = false;
      rep.note = "deg(h - gamma g) leading form < 2 mod " + std::to_string(p);
      return rep;
    }
    SingularLocusReport locus = singular_locus_dim(gf.H_form, p, 3, geo);
    rep.s = std::min(rep.s, locus.dim_estimate);
  }

  // direct lattice sum and the main term over the support |x_i| <= L
  long long R = (long long)std::floor(L);
  CompiledPolyModP hq(h.reduced_mod(q), q);
  CompiledPolyModP gq(g.reduced_mod(q), q);
  Kahan direct, full;
  std::vector<double> t(static_cast<size_t>(n));
  std::vector<uint64_t> z(static_cast<size_t>(n));
  for_each_box_point(n, -R, R, budget, [&](std::span<const long long> x) {
    for (int i = 0; i < n; ++i) t[size_t(i)] = double(x[size_t(i)]) / L;
    double wv = W(t);
    if (wv == 0.0) return;
    full.add(wv);
    for (int i = 0; i < n; ++i) {
      long long m = x[size_t(i)] % (long long)q;
      if (m < 0) m += (long long)q;
      z[size_t(i)] = uint64_t(m);
    }
    if (hq.eval(z) != 0) return;
    if (std::gcd(gq.eval(z), q) != 1) return;
    direct.add(wv);
  });
  rep.q = q;
  rep.S = direct.sum();
  rep.main_term =
      double(totient_from_factors(q_factors)) / double(q) / double(q) * full.sum();
  rep.residual = std::abs(rep.S - rep.main_term);
  double p_small = double(*std::min_element(q_factors.begin(), q_factors.end()));
  double delta = W.delta();
  rep.bound = delta * (std::pow(L, double(rep.s)) *
                           std::pow(double(q), (n - rep.s) / 2.0) +
                       std::pow(L, double(n)) *
                           std::pow(p_small, (rep.s - n + 2) / 2.0) / double(q));
  rep.ratio = rep.residual / rep.bound;
  return rep;
}

Prop1Report proposition1_constant(const MultiPoly& f,
                                  std::span<const Prop1GridPoint> grid,
                                  const BumpWeight& w, Budget& budget) {
  if (f.degree() < 3)
    throw InvalidInput("T(q1,q2) estimates need deg f >= 3");
  Prop1Report rep;
  for (const auto& pt : grid) {
    SumReport r = T_full(f, pt.chi1, pt.chi2, pt.B, w, budget);
    Prop1Entry e;
    e.q1 = pt.chi1.modulus();
    e.q2 = pt.chi2.modulus();
    e.B = pt.B;
    e.abs_T = std::abs(r.value);
    e.rhs = r.bound_terms[0] + r.bound_terms[1] + r.bound_terms[2];
    e.ratio = r.ratio;
    rep.max_ratio = std::max(rep.max_ratio, e.ratio);
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace powersieve
