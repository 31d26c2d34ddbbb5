#include "powersieve/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace powersieve {

SieveSets make_sieve_sets(std::vector<uint64_t> U, std::vector<uint64_t> V,
                          int r) {
  SieveSets s;
  s.r = r;
  s.U_set = std::move(U);
  s.V_set = std::move(V);
  for (uint64_t u : s.U_set)
    if (std::find(s.V_set.begin(), s.V_set.end(), u) != s.V_set.end())
      throw InvalidInput("sieve sets must be disjoint");
  for (uint64_t u : s.U_set) s.U_chars.emplace_back(u, uint64_t(r));
  for (uint64_t v : s.V_set) s.V_chars.emplace_back(v, uint64_t(r));
  s.U = s.U_set.size();
  s.V = s.V_set.size();
  s.A = s.U * s.V;
  s.degenerate = (s.U == 0 || s.V == 0);
  s.v_cubed_ok = !s.degenerate && s.V * s.V * s.V <= s.A;
  return s;
}

SieveSets build_sieve_sets(long long B, double delta, double alpha, int r) {
  if (delta <= 0) throw InvalidInput("delta must be positive");
  if (!(alpha >= 2.0 / 3.0 && alpha < 1.0))
    throw InvalidInput("alpha must lie in [2/3, 1)");
  if (r < 2) throw InvalidInput("r must be >= 2");
  double Q = std::pow(double(B), delta);
  auto interval_primes = [&](double expo) {
    double lo = std::pow(Q, expo);
    double hi = 2.0 * lo;
    return primes_one_mod_r(uint64_t(std::floor(lo)), uint64_t(std::floor(hi)),
                            uint64_t(r));
  };
  std::vector<uint64_t> U = interval_primes(alpha);
  std::vector<uint64_t> V = interval_primes(1.0 - alpha);
  // the intervals can touch for alpha near 2/3 and tiny Q
  std::erase_if(V, [&](uint64_t v) {
    return std::find(U.begin(), U.end(), v) != U.end();
  });
  SieveSets s = make_sieve_sets(std::move(U), std::move(V), r);
  s.Q = Q;
  s.alpha = alpha;
  return s;
}

SieveWeight sieve_weight_from_poly(const MultiPoly& f, long long B,
                                   const BumpWeight& w, Budget& budget) {
  if (B < 1) throw InvalidInput("B must be >= 1");
  SieveWeight omega;
  for_each_box_point(f.nvars(), -B, B, budget, [&](std::span<const long long> x) {
    double wb = w.value_scaled(x, double(B));
    if (wb == 0.0) return;
    mpz_class v = f.eval_int(x);
    if (!v.fits_slong_p())
      throw InvalidInput("sieve weight support value exceeds 64 bits");
    omega.support[v.get_si()] += wb;
  });
  return omega;
}

namespace {

// Character values of every u in U and v in V at one n, as complex floats.
struct CharRow {
  std::vector<std::complex<double>> cu, cv;
  std::complex<double> sum_u{0, 0}, sum_v{0, 0};
  double norm2_u = 0, norm2_v = 0;  // sum |c|^2 (counts of non-divisors)
};

CharRow char_row(const SieveSets& sets, long long n) {
  CharRow row;
  row.cu.reserve(sets.U);
  row.cv.reserve(sets.V);
  for (const auto& chi : sets.U_chars) {
    std::complex<double> z = chi(n).value();
    row.cu.push_back(z);
    row.sum_u += z;
    row.norm2_u += std::norm(z);
  }
  for (const auto& chi : sets.V_chars) {
    std::complex<double> z = chi(n).value();
    row.cv.push_back(z);
    row.sum_v += z;
    row.norm2_v += std::norm(z);
  }
  return row;
}

}  // namespace

SigmaReport sigma_decomposition(const SieveWeight& omega,
                                const SieveSets& sets) {
  if (sets.degenerate)
    throw InvalidInput("sigma decomposition needs non-empty sieve sets");
  SigmaReport rep;
  Kahan sigma, diagonal, coprime, s_u, s_v, m_v, e_v;
  for (const auto& [n, wn] : omega.support) {
    if (wn == 0.0) continue;
    CharRow row = char_row(sets, n);
    // chi_q(n) = c_u(n) c_v(n), so sums over q in A factor through U and V
    std::complex<double> zq = row.sum_u * row.sum_v;
    sigma.add(wn * std::norm(zq));
    diagonal.add(wn * row.norm2_u * row.norm2_v);
    double off_u = std::norm(row.sum_u) - row.norm2_u;  // sum over u != u'
    double off_v = std::norm(row.sum_v) - row.norm2_v;  // sum over v != v'
    coprime.add(wn * off_u * off_v);
    s_u.add(wn * row.norm2_v * off_u);
    s_v.add(wn * row.norm2_u * off_v);
    m_v.add(wn * double(sets.U) * off_v);
    long long divisors = 0;
    for (uint64_t u : sets.U_set)
      if (n % (long long)u == 0) ++divisors;
    e_v.add(wn * double(divisors) * off_v);
  }
  rep.Sigma = sigma.sum();
  rep.diagonal = diagonal.sum();
  rep.coprime = coprime.sum();
  rep.S_U = s_u.sum();
  rep.S_V = s_v.sum();
  rep.M_V = m_v.sum();
  rep.E_V = e_v.sum();
  // measure both identities against the magnitude of their components;
  // the combined sums can cancel to zero while every part stays large
  double parts = rep.diagonal + rep.coprime + rep.S_U + rep.S_V;
  double scale1 = std::max(std::abs(rep.Sigma),
                           std::abs(rep.diagonal) + std::abs(rep.coprime) +
                               std::abs(rep.S_U) + std::abs(rep.S_V));
  rep.identity_relerr =
      scale1 == 0 ? 0.0 : std::abs(rep.Sigma - parts) / scale1;
  double scale2 = std::max(std::abs(rep.S_V),
                           std::abs(rep.M_V) + std::abs(rep.E_V));
  rep.sv_split_relerr =
      scale2 == 0 ? 0.0 : std::abs(rep.S_V - (rep.M_V - rep.E_V)) / scale2;
  return rep;
}

SieveInequalityReport verify_sieve_inequality(const SieveWeight& omega,
                                              const SieveSets& sets,
                                              bool override_support) {
  if (sets.degenerate)
    throw InvalidInput("sieve inequality needs non-empty sieve sets");
  SieveInequalityReport rep;
  if (!sets.v_cubed_ok) {
    rep.hypotheses_ok = false;
    rep.note = "V^3 > A; inequality hypotheses violated";
  }
  double support_bound = std::exp(double(std::min(sets.U, sets.V)));
  if (double(omega.max_abs_support()) >= support_bound) {
    rep.hypotheses_ok = false;
    rep.note += std::string(rep.note.empty() ? "" : "; ") +
                "support exceeds exp(min(U,V))";
  }
  if (!rep.hypotheses_ok && !override_support) throw InvalidInput(rep.note);

  // LHS: sum over n != 0 of omega(n^r)
  long long max_abs = omega.max_abs_support();
  Kahan lhs;
  for (long long n = 1;; ++n) {
    double nr = std::pow(double(n), double(sets.r));
    if (nr > double(max_abs)) break;
    long long v = 1;
    for (int i = 0; i < sets.r; ++i) v *= n;
    lhs.add(omega.at(v));
    if (sets.r % 2 == 0)
      lhs.add(omega.at(v));  // (-n)^r = n^r
    else
      lhs.add(omega.at(-v));
  }
  rep.lhs = lhs.sum();

  double A = double(sets.A);
  rep.trivial_term = omega.total() / A;

  // main sieve: A^{-2} sum_{v,v'} sum_{u != u'} |sum_n omega chi_uv conj(chi_u'v')|
  size_t U = sets.U, V = sets.V;
  std::vector<KahanComplex> quad(U * U * V * V);
  std::vector<KahanComplex> pair_v(V * V);
  for (const auto& [n, wn] : omega.support) {
    if (wn == 0.0) continue;
    CharRow row = char_row(sets, n);
    for (size_t a = 0; a < U; ++a)
      for (size_t b = 0; b < U; ++b) {
        if (a == b) continue;
        std::complex<double> zu = row.cu[a] * std::conj(row.cu[b]);
        for (size_t c = 0; c < V; ++c)
          for (size_t d = 0; d < V; ++d)
            quad[((a * U + b) * V + c) * V + d].add(
                wn * zu * row.cv[c] * std::conj(row.cv[d]));
      }
    for (size_t c = 0; c < V; ++c)
      for (size_t d = 0; d < V; ++d)
        if (c != d)
          pair_v[c * V + d].add(wn * row.cv[c] * std::conj(row.cv[d]));
  }
  Kahan main_sieve;
  for (const auto& acc : quad) main_sieve.add(std::abs(acc.sum()));
  rep.main_sieve = main_sieve.sum() / (A * A);
  Kahan prime_sieve;
  for (const auto& acc : pair_v) prime_sieve.add(std::abs(acc.sum()));
  rep.prime_sieve = double(U) * prime_sieve.sum() / (A * A);

  rep.rhs = rep.trivial_term + rep.main_sieve + rep.prime_sieve;
  rep.C_measured = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

}  // namespace powersieve
