#pragma once

#include <span>
#include <vector>

#include "powersieve/common.hpp"

namespace powersieve {

// The concrete smooth bump: w(t) = prod_i phi(t_i) with
//   phi(t) = e^{4/3} * e^{-1/(1-t^2)}   for |t| < 1, else 0.
// phi >= 1 on [-1/2, 1/2] with equality exactly at +-1/2; support is [-1,1].
// w_B(x) = w(x/B).
class BumpWeight {
 public:
  static double phi(double t);
  // j-th derivative of phi (exact rational-polynomial recurrence, rendered
  // in doubles)
  static double phi_deriv(int order, double t);
  // sampled sup of |phi^{(j)}| over the support
  static double deriv_max(int order);
  // bound on all partial derivatives of the n-dim product weight up to
  // order n+1
  static double delta(int n);

  double operator()(std::span<const double> t) const;
  double value_scaled(std::span<const long long> x, double B) const;
};

// 1-d Fourier transform of phi: \int phi(t) e(-xi t) dt, Gauss-Legendre.
// The real part is phi_hat; phi_hat_im is the (numerically ~0) sine part,
// kept separate so evenness can be checked rather than assumed.
double phi_hat(double xi);
double phi_hat_im(double xi);

// W(t) = w(t + shift) * w(t), the window shape fed to Poisson summation.
// Supported inside [-1,1]^n; delta() bounds its partial derivatives up to
// order n+1 via the Leibniz rule on the factor bounds.
class Window {
 public:
  Window(int n, std::vector<double> shift);
  explicit Window(int n) : Window(n, std::vector<double>(size_t(n), 0.0)) {}

  int nvars() const { return n_; }
  double operator()(std::span<const double> t) const;
  double delta() const;
  const std::vector<double>& shift() const { return shift_; }

 private:
  int n_;
  std::vector<double> shift_;
};

struct FourierDecayEntry {
  std::vector<double> x;
  double norm;       // |x|
  double what_re;    // quadrature value of the transform
  double what_im;
  double ratio;      // |What(x)| / (delta * min(1, |x|^{-n-1}))
};

struct FourierDecayReport {
  int n = 0;
  double delta = 0;
  double max_ratio = 0;
  std::vector<FourierDecayEntry> entries;
};

// Evaluates the transform of the product bump on a grid and reports the
// decay ratios against delta * min(1, |x|^{-n-1}).
FourierDecayReport fourier_decay_check(const BumpWeight& w, int n,
                                       std::span<const std::vector<double>> grid);

}  // namespace powersieve
