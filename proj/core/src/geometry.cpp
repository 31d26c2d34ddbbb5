#include "powersieve/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "powersieve/counting.hpp"
#include "powersieve/field.hpp"

namespace powersieve {

GammaForm compute_gamma(const MultiPoly& h, const MultiPoly& g, uint64_t p) {
  if (g.is_zero() || g.degree() < 3)
    throw InvalidInput("compute_gamma needs deg g >= 3");
  int d = g.degree();
  if (h.degree() > d) throw InvalidInput("compute_gamma needs deg h <= deg g");
  MultiPoly hp = h.reduced_mod(p);
  MultiPoly gp = g.reduced_mod(p);
  if (gp.is_zero() || gp.degree() < d)
    throw InvalidInput("leading form of g vanishes mod p");

  GammaForm out{0, MultiPoly(h.nvars()), 0, false};
  uint64_t gamma = 0;
  if (!hp.is_zero() && hp.degree() == d) {
    // leading form of h must be gamma * (leading form of g) mod p
    MultiPoly lh = hp.leading_form();
    MultiPoly lg = gp.leading_form();
    const auto& [e0, c0] = *lg.terms().begin();
    auto it = lh.terms().find(e0);
    if (it == lh.terms().end())
      throw InvalidInput("leading forms of h and g are not proportional mod p");
    uint64_t ch = it->second.get_ui() % p;
    uint64_t cg = c0.get_ui() % p;
    gamma = mul_mod(ch, inv_mod(cg, p), p);
    MultiPoly diff = (lh - lg.scaled(mpz_class((unsigned long)gamma))).reduced_mod(p);
    if (!diff.is_zero())
      throw InvalidInput("leading forms of h and g are not proportional mod p");
  }
  MultiPoly rem =
      (hp - gp.scaled(mpz_class((unsigned long)gamma))).reduced_mod(p);
  out.gamma = gamma;
  if (rem.is_zero()) {
    out.H_form = MultiPoly(h.nvars());
    out.deg_H = -1;
    out.degree_flagged = true;
    return out;
  }
  out.H_form = rem.leading_form();
  out.deg_H = out.H_form.degree();
  out.degree_flagged = out.deg_H < 2;
  return out;
}

namespace {

// Largest k <= limit whose p^{k n} scan stays within both the shared budget
// and the per-scan cap (10^7 points per variety scan); at least 1.
constexpr uint64_t kScanCap = 10'000'000;

int feasible_max_k(uint64_t p, int n, int limit, const Budget& budget) {
  int best = 1;
  for (int k = 2; k <= limit; ++k) {
    long double pts = std::pow((long double)p, (long double)k * n);
    if (pts <= (long double)kScanCap && budget.fits(uint64_t(pts)))
      best = k;
    else
      break;
  }
  return best;
}

// Compiled form over an extension field: terms as (coeff in F_p, exponents).
struct CompiledExt {
  const ExtField& F;
  std::vector<uint64_t> coeffs;
  std::vector<uint32_t> expos;
  int nvars;

  CompiledExt(const ExtField& field, const MultiPoly& f)
      : F(field), nvars(f.nvars()) {
    mpz_class m((unsigned long)field.p());
    for (const auto& [e, c] : f.terms()) {
      mpz_class cm = c % m;
      if (cm < 0) cm += m;
      if (cm == 0) continue;
      coeffs.push_back(cm.get_ui());
      for (int i = 0; i < nvars; ++i) expos.push_back(e[size_t(i)]);
    }
  }

  ExtField::Elem eval(std::span<const ExtField::Elem> x) const {
    ExtField::Elem acc = F.zero();
    const uint32_t* e = expos.data();
    for (uint64_t c : coeffs) {
      ExtField::Elem term = F.from_int(c);
      for (int i = 0; i < nvars; ++i, ++e)
        if (*e) term = F.mul(term, F.pow(x[size_t(i)], *e));
      acc = F.add(acc, term);
    }
    return acc;
  }
};

uint64_t count_locus_points(const ExtField& F, const MultiPoly& H,
                            Budget& budget) {
  int n = H.nvars();
  CompiledExt f(F, H);
  std::vector<CompiledExt> grad;
  for (const auto& d : H.gradient()) grad.emplace_back(F, d);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.size();
  std::vector<ExtField::Elem> x(size_t(n), F.zero());
  uint64_t count = 0;
  for (uint64_t idx = 0; idx < total; ++idx) {
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = F.from_index(t % F.size());
      t /= F.size();
    }
    if (!F.is_zero(f.eval(x))) continue;
    bool singular = true;
    for (const auto& d : grad)
      if (!F.is_zero(d.eval(x))) {
        singular = false;
        break;
      }
    if (singular) ++count;
  }
  return count;
}

}  // namespace

int dim_from_counts(std::span<const uint64_t> counts, uint64_t p, int nvars,
                    bool* exact) {
  if (counts.empty()) throw InvalidInput("dimension estimate needs counts");
  double lp = std::log(double(p));
  // least-squares slope of log(count) vs k log p; count 0 clamps hard to -inf,
  // treated as an empty locus
  bool any_zero = false;
  for (uint64_t c : counts)
    if (c == 0) any_zero = true;
  int s;
  if (any_zero) {
    s = 0;
  } else if (counts.size() == 1) {
    s = int(std::lround(std::log(double(counts[0])) / lp));
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
      double x = double(i + 1) * lp;
      double y = std::log(double(counts[i]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double k = double(counts.size());
    s = int(std::lround((k * sxy - sx * sy) / (k * sxx - sx * sx)));
  }
  s = std::clamp(s, 0, nvars);
  if (exact) {
    *exact = !any_zero;
    for (size_t i = 0; i < counts.size() && *exact; ++i) {
      double expect = std::pow(double(p), double((i + 1) * size_t(s)));
      double c = double(counts[i]);
      if (c < expect / 4.0 || c > expect * 4.0) *exact = false;
    }
  }
  return s;
}

SingularLocusReport singular_locus_dim(const MultiPoly& H_form, uint64_t p,
                                       int max_k, Budget& budget) {
  if (H_form.is_zero()) throw InvalidInput("zero polynomial has no locus dim");
  if (!H_form.is_homogeneous() || H_form.degree() < 2)
    throw InvalidInput("singular locus needs a form of degree >= 2");
  MultiPoly Hp = H_form.reduced_mod(p);
  SingularLocusReport rep;
  rep.p = p;
  if (Hp.is_zero()) {
    // the variety is all of A^n
    rep.dim_estimate = H_form.nvars();
    rep.exact = true;
    for (int k = 1; k <= max_k; ++k) {
      long double pts = std::pow((long double)p, (long double)k * H_form.nvars());
      rep.counts.push_back(uint64_t(pts));
    }
    return rep;
  }
  int kcap = feasible_max_k(p, H_form.nvars(), std::min(max_k, 3), budget);
  for (int k = 1; k <= kcap; ++k) {
    ExtField F = ExtField::build(p, k, budget.cap());
    rep.counts.push_back(count_locus_points(F, Hp, budget));
  }
  rep.dim_estimate = dim_from_counts(rep.counts, p, H_form.nvars(), &rep.exact);
  return rep;
}

int s_of_h(const MultiPoly& F, std::span<const long long> h, uint64_t p,
           Budget& budget) {
  int n = F.nvars();
  if (int(h.size()) != n) throw InvalidInput("h dimension mismatch");
  auto grad = F.gradient();
  MultiPoly form(n);
  for (int i = 0; i < n; ++i)
    form = form + grad[size_t(i)].scaled(mpz_class((long)h[size_t(i)]));
  form = form.reduced_mod(p);
  if (form.is_zero()) return n;  // h == 0 mod p: the variety is everything
  SingularLocusReport rep = singular_locus_dim(form, p, 3, budget);
  return rep.dim_estimate;
}

// ---- Lemma 3 histogram ------------------------------------------------------
//
// s(h) depends only on h mod p, and for fixed x the conditions
// h . grad F(x) = 0 and hess F(x) h = 0 are F_p-linear in h. So instead of a
// scan per h we make one pass over x in F_{p^k}^n, solve the small linear
// system, and charge every h-class in its solution space. One pass per k
// replaces (2H+1)^n full point counts.

namespace {

// Gaussian elimination over F_p; returns the basis of the nullspace of the
// rows x unknowns system (rows x n matrix, n <= 3).
std::vector<std::vector<uint64_t>> nullspace_mod_p(
    std::vector<std::vector<uint64_t>> m, int n, uint64_t p) {
  size_t rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < m.size(); ++col) {
    size_t sel = rank;
    while (sel < m.size() && m[sel][size_t(col)] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[rank], m[sel]);
    uint64_t inv = inv_mod(m[rank][size_t(col)], p);
    for (int j = 0; j < n; ++j)
      m[rank][size_t(j)] = mul_mod(m[rank][size_t(j)], inv, p);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][size_t(col)] == 0) continue;
      uint64_t c = m[i][size_t(col)];
      for (int j = 0; j < n; ++j)
        m[i][size_t(j)] =
            (m[i][size_t(j)] + p - mul_mod(c, m[rank][size_t(j)], p)) % p;
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(size_t(n), false);
  for (int c : pivot_col) is_pivot[size_t(c)] = true;
  std::vector<std::vector<uint64_t>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[size_t(free)]) continue;
    std::vector<uint64_t> v(size_t(n), 0);
    v[size_t(free)] = 1;
    for (size_t r = 0; r < rank; ++r) {
      // pivot_col[r] entry: -(coefficient of the free column)
      uint64_t c = m[r][size_t(free)];
      v[size_t(pivot_col[r])] = (p - c) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// All h-class counts for one k: counts[class] = #{x in F_{p^k}^n :
// h.gradF(x)=0 and hessF(x)h=0}, where class indexes h in F_p^n base-p.
// include_gradient_row toggles the h.gradF(x)=0 equation (off for the
// Hessian-only variety of the T_s check).
std::vector<uint64_t> locus_counts_per_h(const MultiPoly& F, uint64_t p, int k,
                                         bool include_gradient_row,
                                         Budget& budget) {
  int n = F.nvars();
  ExtField field = ExtField::build(p, k, budget.cap());
  auto grad_polys = F.gradient();
  std::vector<CompiledExt> grad;
  for (const auto& d : grad_polys) grad.emplace_back(field, d);
  std::vector<CompiledExt> hess;  // row-major upper triangle filled fully
  for (int i = 0; i < n; ++i) {
    auto second = grad_polys[size_t(i)].gradient();
    for (int j = 0; j < n; ++j) hess.emplace_back(field, second[size_t(j)]);
  }

  uint64_t classes = 1;
  for (int i = 0; i < n; ++i) classes *= p;
  std::vector<uint64_t> counts(size_t(classes), 0);

  uint64_t field_size = field.size();
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= field_size;
  std::vector<ExtField::Elem> x(static_cast<size_t>(n));
  std::vector<ExtField::Elem> gvec(static_cast<size_t>(n));
  std::vector<std::vector<uint64_t>> rows;
  std::vector<uint64_t> hvec(static_cast<size_t>(n));
  for (uint64_t idx = 0; idx < total; ++idx) {
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = field.from_index(t % field_size);
      t /= field_size;
    }
    rows.clear();
    // each F_{p^k} linear condition in h splits into k F_p rows
    auto push_rows = [&](const std::vector<ExtField::Elem>& coef) {
      for (int comp = 0; comp < k; ++comp) {
        std::vector<uint64_t> row(static_cast<size_t>(n));
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          row[size_t(i)] = coef[size_t(i)][size_t(comp)];
          nonzero |= row[size_t(i)] != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    };
    if (include_gradient_row) {
      for (int i = 0; i < n; ++i) gvec[size_t(i)] = grad[size_t(i)].eval(x);
      push_rows(gvec);
    }
    for (int rrow = 0; rrow < n; ++rrow) {
      std::vector<ExtField::Elem> coef(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        coef[size_t(i)] = hess[size_t(rrow * n + i)].eval(x);
      push_rows(coef);
    }
    if (rows.empty()) {
      // every h satisfies the conditions at this x
      for (auto& c : counts) ++c;
      continue;
    }
    auto basis = nullspace_mod_p(rows, n, p);
    // enumerate the solution space (dimension t, p^t elements)
    size_t dim = basis.size();
    uint64_t space = 1;
    for (size_t i = 0; i < dim; ++i) space *= p;
    for (uint64_t e = 0; e < space; ++e) {
      uint64_t tt = e;
      std::fill(hvec.begin(), hvec.end(), 0);
      for (size_t b = 0; b < dim; ++b) {
        uint64_t c = tt % p;
        tt /= p;
        if (c)
          for (int i = 0; i < n; ++i)
            hvec[size_t(i)] = (hvec[size_t(i)] + mul_mod(c, basis[b][size_t(i)], p)) % p;
      }
      uint64_t cls = 0;
      for (int i = n - 1; i >= 0; --i) cls = cls * p + hvec[size_t(i)];
      ++counts[size_t(cls)];
    }
  }
  return counts;
}

}  // namespace

Lemma3Report lemma3_histogram(const MultiPoly& F, long long H_box, uint64_t p,
                              Budget& budget) {
  int n = F.nvars();
  if (H_box < 0) throw InvalidInput("H_box must be >= 0");
  Lemma3Report rep;
  if (H_box == 0) return rep;

  int max_k = feasible_max_k(p, n, 3, budget);
  rep.max_k_used = max_k;
  std::vector<std::vector<uint64_t>> per_k;
  for (int k = 1; k <= max_k; ++k)
    per_k.push_back(locus_counts_per_h(F, p, k, true, budget));

  uint64_t classes = 1;
  for (int i = 0; i < n; ++i) classes *= p;
  std::vector<int> s_of_class(size_t(classes), -1);
  std::vector<uint64_t> counts(static_cast<size_t>(max_k));
  for (uint64_t cls = 0; cls < classes; ++cls) {
    if (cls == 0) {
      s_of_class[size_t(cls)] = n;  // h == 0 mod p
      continue;
    }
    for (int k = 0; k < max_k; ++k) counts[size_t(k)] = per_k[size_t(k)][size_t(cls)];
    s_of_class[size_t(cls)] = dim_from_counts(counts, p, n, nullptr);
  }

  Budget box_budget(budget.cap());
  for_each_box_point(n, -H_box, H_box, box_budget,
                     [&](std::span<const long long> h) {
    bool zero = true;
    for (long long hi : h) zero &= hi == 0;
    if (zero) return;
    uint64_t cls = 0;
    for (int i = n - 1; i >= 0; --i) {
      long long m = h[size_t(i)] % (long long)p;
      if (m < 0) m += (long long)p;
      cls = cls * p + uint64_t(m);
    }
    rep.histogram[s_of_class[size_t(cls)]] += 1;
    rep.total += 1;
  });
  for (const auto& [s, count] : rep.histogram) {
    double bound = std::pow(double(H_box), double(n - s)) +
                   std::pow(double(H_box), double(n)) * std::pow(double(p), -double(s));
    rep.ratios[s] = double(count) / bound;
  }
  return rep;
}

Lemma4Report lemma4_count_check(std::span<const MultiPoly> defining,
                                const std::vector<uint64_t>& q_factors,
                                long long R, int k, Budget& budget) {
  if (defining.empty()) throw InvalidInput("need defining polynomials");
  int n = defining[0].nvars();
  uint64_t q = 1;
  for (uint64_t p : q_factors) {
    if (!is_prime(p)) throw InvalidInput("q factors must be prime");
    q *= p;
  }
  // membership tables per prime factor, indexed by the point mod p
  std::vector<std::vector<bool>> member;
  for (uint64_t p : q_factors) {
    std::vector<CompiledPolyModP> polys;
    for (const auto& f : defining) polys.emplace_back(f.reduced_mod(p), p);
    uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    std::vector<bool> in_v(size_t(total), false);
    std::vector<uint64_t> z(static_cast<size_t>(n));
    for (uint64_t idx = 0; idx < total; ++idx) {
      budget.charge();
      uint64_t t = idx;
      for (int i = 0; i < n; ++i) {
        z[size_t(i)] = t % p;
        t /= p;
      }
      bool ok = true;
      for (const auto& f : polys)
        if (f.eval(z) != 0) {
          ok = false;
          break;
        }
      in_v[size_t(idx)] = ok;
    }
    member.push_back(std::move(in_v));
  }
  // lattice points per residue class mod q in [-R, R]
  auto class_count = [&](uint64_t zi) -> long long {
    long long z = (long long)zi;
    long long hi = (R - z) >= 0 ? (R - z) / (long long)q : -(((z - R) + (long long)q - 1) / (long long)q);
    long long lo = (-R - z) >= 0 ? ((-R - z) + (long long)q - 1) / (long long)q
                                 : -((R + z) / (long long)q);
    return hi - lo + 1;
  };
  std::vector<long long> per_coord(static_cast<size_t>(q));
  for (uint64_t z = 0; z < q; ++z) per_coord[size_t(z)] = class_count(z);

  long long count = 0;
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  std::vector<uint64_t> z(static_cast<size_t>(n));
  for (uint64_t idx = 0; idx < total; ++idx) {
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      z[size_t(i)] = t % q;
      t /= q;
    }
    bool ok = true;
    for (size_t pi = 0; pi < q_factors.size() && ok; ++pi) {
      uint64_t p = q_factors[pi];
      uint64_t ridx = 0;
      for (int i = n - 1; i >= 0; --i) ridx = ridx * p + (z[size_t(i)] % p);
      ok = member[pi][size_t(ridx)];
    }
    if (!ok) continue;
    long long pts = 1;
    for (int i = 0; i < n; ++i) pts *= per_coord[size_t(z[size_t(i)])];
    count += pts;
  }
  Lemma4Report rep;
  rep.count = count;
  rep.bound = std::pow(double(R), double(n)) * std::pow(double(q), double(k - n)) +
              std::pow(double(R), double(k));
  rep.ratio = count / rep.bound;
  return rep;
}

Lemma6Report lemma6_Ts_check(const MultiPoly& F, uint64_t p, int s,
                             Budget& budget) {
  int n = F.nvars();
  Lemma6Report rep;
  rep.s = s;
  if (s > n) return rep;  // empty by convention
  int max_k = feasible_max_k(p, n, 3, budget);
  rep.max_k_used = max_k;
  std::vector<std::vector<uint64_t>> per_k;
  for (int k = 1; k <= max_k; ++k)
    per_k.push_back(locus_counts_per_h(F, p, k, false, budget));
  uint64_t classes = 1;
  for (int i = 0; i < n; ++i) classes *= p;
  std::vector<uint64_t> counts(static_cast<size_t>(max_k));
  for (uint64_t cls = 0; cls < classes; ++cls) {
    int dim;
    if (cls == 0) {
      dim = n;
    } else {
      bool empty = false;
      for (int k = 0; k < max_k; ++k) {
        counts[size_t(k)] = per_k[size_t(k)][size_t(cls)];
        empty |= counts[size_t(k)] == 0;
      }
      dim = empty ? -1 : dim_from_counts(counts, p, n, nullptr);
    }
    if (dim >= s) ++rep.qualifying;
  }
  rep.bound = std::pow(double(p), double(n - s));
  rep.ratio = double(rep.qualifying) / rep.bound;
  return rep;
}

}  // namespace powersieve
