#include "powersieve/weight.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace powersieve {

namespace {

constexpr double kC = 3.7936678946831774;  // e^{4/3}

// phi^{(j)}(t) = P_j(t) * (1-t^2)^{-2j} * e^{-1/(1-t^2)} on |t|<1.
// Differentiating P(t)(1-t^2)^{-m} E with E = e^{-1/(1-t^2)} gives
//   [P'(t)(1-t^2)^2 + 2t P(t)(m(1-t^2) - 1)] (1-t^2)^{-(m+2)} E,
// so each order bumps m by 2 and maps P through a fixed polynomial recurrence.
struct DerivRep {
  std::vector<double> P;  // coefficients, low degree first
  int m = 0;
};

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<double> poly_add(std::vector<double> a,
                             const std::vector<double>& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

const DerivRep& deriv_rep(int order) {
  static std::vector<DerivRep> reps = {{{kC}, 0}};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (int(reps.size()) <= order) {
    const DerivRep& prev = reps.back();
    std::vector<double> dP(prev.P.size() > 1 ? prev.P.size() - 1 : 1, 0.0);
    for (size_t i = 1; i < prev.P.size(); ++i) dP[i - 1] = double(i) * prev.P[i];
    // (1-t^2)^2 = 1 - 2t^2 + t^4
    std::vector<double> one_m_t2_sq = {1, 0, -2, 0, 1};
    // 2t (m(1-t^2) - 1) = 2(m-1) t - 2m t^3
    std::vector<double> tail = {0, 2.0 * (prev.m - 1), 0, -2.0 * prev.m};
    DerivRep next;
    next.P = poly_add(poly_mul(dP, one_m_t2_sq), poly_mul(prev.P, tail));
    next.m = prev.m + 2;
    reps.push_back(std::move(next));
  }
  return reps[size_t(order)];
}

double eval_poly(const std::vector<double>& P, double t) {
  double v = 0;
  for (size_t i = P.size(); i-- > 0;) v = v * t + P[i];
  return v;
}

}  // namespace

double BumpWeight::phi(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return kC * std::exp(-1.0 / (1.0 - t * t));
}

double BumpWeight::phi_deriv(int order, double t) {
  if (order == 0) return phi(t);
  if (std::abs(t) >= 1.0) return 0.0;
  const DerivRep& rep = deriv_rep(order);
  double u = 1.0 - t * t;
  return eval_poly(rep.P, t) * std::pow(u, -rep.m) * std::exp(-1.0 / u);
}

double BumpWeight::deriv_max(int order) {
  static std::vector<double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (int(cache.size()) <= order) {
    int j = int(cache.size());
    double m = 0;
    constexpr int kSamples = 20000;
    for (int i = -kSamples + 1; i < kSamples; ++i) {
      double t = double(i) / kSamples;
      m = std::max(m, std::abs(phi_deriv(j, t)));
    }
    cache.push_back(m);
  }
  return cache[size_t(order)];
}

double BumpWeight::delta(int n) {
  // max over multi-indices |alpha| <= n+1 of prod_i M_{alpha_i}
  int top = n + 1;
  std::vector<double> M(size_t(top) + 1);
  for (int j = 0; j <= top; ++j) M[size_t(j)] = deriv_max(j);
  // best[b] = max product achievable with total remaining order b per coord
  std::vector<double> best(size_t(top) + 1, 1.0);
  for (int coord = 0; coord < n; ++coord) {
    std::vector<double> next(size_t(top) + 1, 0.0);
    for (int b = 0; b <= top; ++b)
      for (int j = 0; j <= b; ++j)
        next[size_t(b)] = std::max(next[size_t(b)], best[size_t(b - j)] * M[size_t(j)]);
    best = next;
  }
  return best[size_t(top)];
}

double BumpWeight::operator()(std::span<const double> t) const {
  double v = 1.0;
  for (double ti : t) {
    v *= phi(ti);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double BumpWeight::value_scaled(std::span<const long long> x, double B) const {
  double v = 1.0;
  for (long long xi : x) {
    v *= phi(double(xi) / B);
    if (v == 0.0) return 0.0;
  }
  return v;
}

namespace {

// 256-node Gauss-Legendre on [-1,1]; phi is analytic inside the support
// so this converges far below 1e-8 for |xi| <= ~100.
struct GLRule {
  std::vector<double> nodes, weights;
};

const GLRule& gl_rule() {
  static GLRule rule;
  static std::once_flag once;
  std::call_once(once, [] {
    auto& nodes = rule.nodes;
    auto& weights = rule.weights;
    constexpr int N = 256;
    nodes.resize(N);
    weights.resize(N);
    for (int i = 0; i < N; ++i) {
      // Newton on Legendre P_N from the Chebyshev initial guess
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = x;
        for (int k = 2; k <= N; ++k) {
          double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        double dp = N * (x * p1 - p0) / (x * x - 1);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1, p1 = x;
      for (int k = 2; k <= N; ++k) {
        double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      double dp = N * (x * p1 - p0) / (x * x - 1);
      nodes[size_t(i)] = x;
      weights[size_t(i)] = 2.0 / ((1 - x * x) * dp * dp);
    }
  });
  return rule;
}

}  // namespace

double phi_hat(double xi) {
  const GLRule& gl = gl_rule();
  Kahan acc;
  for (size_t i = 0; i < gl.nodes.size(); ++i)
    acc.add(gl.weights[i] * BumpWeight::phi(gl.nodes[i]) *
            std::cos(2.0 * std::numbers::pi * xi * gl.nodes[i]));
  return acc.sum();
}

double phi_hat_im(double xi) {
  const GLRule& gl = gl_rule();
  Kahan acc;
  for (size_t i = 0; i < gl.nodes.size(); ++i)
    acc.add(-gl.weights[i] * BumpWeight::phi(gl.nodes[i]) *
            std::sin(2.0 * std::numbers::pi * xi * gl.nodes[i]));
  return acc.sum();
}

Window::Window(int n, std::vector<double> shift) : n_(n), shift_(std::move(shift)) {
  if (int(shift_.size()) != n_) throw InvalidInput("window shift dimension");
}

double Window::operator()(std::span<const double> t) const {
  double v = 1.0;
  for (int i = 0; i < n_; ++i) {
    v *= BumpWeight::phi(t[size_t(i)] + shift_[size_t(i)]) *
         BumpWeight::phi(t[size_t(i)]);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double Window::delta() const {
  // per-coordinate factor psi(t) = phi(t+a)phi(t):
  // |psi^{(j)}| <= sum_l C(j,l) M_l M_{j-l} =: N_j, independent of a
  int top = n_ + 1;
  std::vector<double> N(size_t(top) + 1, 0.0);
  for (int j = 0; j <= top; ++j) {
    double binom = 1;
    for (int l = 0; l <= j; ++l) {
      N[size_t(j)] += binom * BumpWeight::deriv_max(l) * BumpWeight::deriv_max(j - l);
      binom = binom * (j - l) / (l + 1);
    }
  }
  std::vector<double> best(size_t(top) + 1, 1.0);
  for (int coord = 0; coord < n_; ++coord) {
    std::vector<double> next(size_t(top) + 1, 0.0);
    for (int b = 0; b <= top; ++b)
      for (int j = 0; j <= b; ++j)
        next[size_t(b)] = std::max(next[size_t(b)], best[size_t(b - j)] * N[size_t(j)]);
    best = next;
  }
  return best[size_t(top)];
}

FourierDecayReport fourier_decay_check(const BumpWeight&, int n,
                                       std::span<const std::vector<double>> grid) {
  FourierDecayReport rep;
  rep.n = n;
  rep.delta = BumpWeight::delta(n);
  for (const auto& x : grid) {
    if (int(x.size()) != n) throw InvalidInput("grid point dimension mismatch");
    FourierDecayEntry e;
    e.x = x;
    double norm2 = 0;
    std::complex<double> what = 1.0;
    for (double xi : x) {
      norm2 += xi * xi;
      what *= std::complex<double>(phi_hat(xi), phi_hat_im(xi));
    }
    e.norm = std::sqrt(norm2);
    e.what_re = what.real();
    e.what_im = what.imag();
    double decay = e.norm <= 1.0 ? 1.0 : std::pow(e.norm, -(n + 1));
    e.ratio = std::abs(what) / (rep.delta * decay);
    rep.max_ratio = std::max(rep.max_ratio, e.ratio);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace powersieve
