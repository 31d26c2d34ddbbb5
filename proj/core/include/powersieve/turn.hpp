#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "powersieve/common.hpp"

namespace powersieve {

// A root of unity held as an exact reduced fraction of a full turn:
// e(num/den) with den >= 1 and 0 <= num < den. Complex floats are derived
// on demand; exact identity tests work on the fractions themselves.
struct Turn {
  long long num = 0;
  long long den = 1;

  Turn() = default;
  Turn(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den <= 0) throw InvalidInput("turn with non-positive denominator");
    num %= den;
    if (num < 0) num += den;
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  Turn operator+(const Turn& o) const {
    long long l = std::lcm(den, o.den);
    return Turn(num * (l / den) + o.num * (l / o.den), l);
  }
  Turn conj() const { return Turn(-num, den); }
  Turn scaled(long long k) const { return Turn(num * k, den); }
  bool operator==(const Turn& o) const { return num == o.num && den == o.den; }

  std::complex<double> value() const {
    double a = 2.0 * std::numbers::pi * double(num) / double(den);
    return {std::cos(a), std::sin(a)};
  }
};

// A character value: either zero or an exact root of unity.
struct CharValue {
  bool is_zero = true;
  Turn turn;

  static CharValue zero() { return {}; }
  static CharValue one() { return unit(Turn(0, 1)); }
  static CharValue unit(Turn t) {
    CharValue v;
    v.is_zero = false;
    v.turn = t;
    return v;
  }
  CharValue operator*(const CharValue& o) const {
    if (is_zero || o.is_zero) return zero();
    return unit(turn + o.turn);
  }
  CharValue conj() const { return is_zero ? zero() : unit(turn.conj()); }
  std::complex<double> value() const {
    return is_zero ? std::complex<double>(0, 0) : turn.value();
  }
  double abs2() const { return is_zero ? 0.0 : 1.0; }
};

// Accumulates sums of (weight) * e(k/D) by bucketing weights per exact angle.
// The trigonometric rendering happens once, at the end, so grouping is exact.
class AngleSum {
 public:
  explicit AngleSum(long long common_denominator)
      : d_(common_denominator), buckets_(size_t(common_denominator)) {}

  void add(const Turn& t, double weight) {
    if (d_ % t.den != 0)
      throw InvalidInput("angle denominator incompatible with accumulator");
    buckets_[size_t(t.num * (d_ / t.den))].add(weight);
  }
  void add(const CharValue& v, double weight) {
    if (!v.is_zero) add(v.turn, weight);
  }
  std::complex<double> value() const {
    KahanComplex acc;
    for (long long k = 0; k < d_; ++k) {
      double w = buckets_[size_t(k)].sum();
      if (w != 0.0) acc.add(w * Turn(k, d_).value());
    }
    return acc.sum();
  }
  double total_weight() const {
    Kahan acc;
    for (const auto& b : buckets_) acc.add(b.sum());
    return acc.sum();
  }

 private:
  long long d_;
  std::vector<Kahan> buckets_;
};

}  // namespace powersieve
