#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace powersieve {

// Precondition violations map to CLI exit code 1, budget overruns to 2.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point budget shared by all enumeration loops. Every scan charges one unit
// per evaluated point and throws once the cap is exhausted.
class Budget {
 public:
  explicit Budget(uint64_t cap = 100'000'000) : cap_(cap) {}

  void charge(uint64_t points = 1) {
    used_ += points;
    if (used_ > cap_)
      throw BudgetError("point budget exceeded (cap " + std::to_string(cap_) +
                        ")");
  }
  bool fits(uint64_t points) const { return used_ + points <= cap_; }
  uint64_t cap() const { return cap_; }
  uint64_t used() const { return used_; }

 private:
  uint64_t cap_;
  uint64_t used_ = 0;
};

// Exact rational, just enough for exponent bookkeeping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  double value() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

// SplitMix64. All seeded draws in the project go through this generator so
// fixtures are reproducible from a single 64-bit seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  uint64_t below(uint64_t n) { return next() % n; }
  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    return lo + (long long)below(uint64_t(hi - lo + 1));
  }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Compensated (Kahan) accumulator; identity tests need 1e-9 relative accuracy.
class Kahan {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double sum() const { return s_; }

 private:
  double s_ = 0, c_ = 0;
};

class KahanComplex {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> sum() const { return {re_.sum(), im_.sum()}; }

 private:
  Kahan re_, im_;
};

inline double rel_err(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}
inline double rel_err(std::complex<double> a, std::complex<double> b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace powersieve
