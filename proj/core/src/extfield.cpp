#include "powersieve/extfield.hpp"

#include "powersieve/field.hpp"

namespace powersieve {

namespace {

// k <= 3: a monic polynomial of degree 2 or 3 is reducible iff it has a root.
bool is_irreducible(uint64_t p, int k, const std::array<uint64_t, 3>& c) {
  if (k == 1) return true;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t v = 1;  // monic leading term
    for (int i = k - 1; i >= 0; --i) v = (mul_mod(v, x, p) + c[size_t(i)]) % p;
    if (v == 0) return false;
  }
  return true;
}

}  // namespace

ExtField::ExtField(uint64_t p, int k, std::array<uint64_t, 3> mod)
    : p_(p), k_(k), mod_(mod) {
  size_ = 1;
  for (int i = 0; i < k; ++i) size_ *= p;
}

ExtField ExtField::build(uint64_t p, int k, uint64_t point_cap) {
  if (k < 1 || k > 3) throw InvalidInput("extension degree must be 1, 2 or 3");
  if (!is_prime(p)) throw InvalidInput("extension field needs prime p");
  uint64_t size = 1;
  for (int i = 0; i < k; ++i) {
    if (size > point_cap / p)
      throw BudgetError("p^k exceeds the exhaustive-loop cap");
    size *= p;
  }
  if (k == 1) return ExtField(p, 1, {0, 0, 0});  // modulus x
  // lexicographically smallest (c0, c1, ...) monic irreducible
  std::array<uint64_t, 3> c{0, 0, 0};
  for (uint64_t c0 = 0; c0 < p; ++c0) {
    for (uint64_t c1 = 0; c1 < p; ++c1) {
      uint64_t c2max = (k == 3) ? p : 1;
      for (uint64_t c2 = 0; c2 < c2max; ++c2) {
        c = {c0, c1, c2};
        if (is_irreducible(p, k, c)) return ExtField(p, k, c);
      }
    }
  }
  throw InvalidInput("no irreducible modulus found");  // unreachable
}

ExtField::Elem ExtField::from_index(uint64_t idx) const {
  Elem a{0, 0, 0};
  for (int i = 0; i < k_; ++i) {
    a[size_t(i)] = idx % p_;
    idx /= p_;
  }
  return a;
}

uint64_t ExtField::to_index(const Elem& a) const {
  uint64_t idx = 0;
  for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + a[size_t(i)];
  return idx;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r{0, 0, 0};
  for (int i = 0; i < k_; ++i) r[size_t(i)] = (a[size_t(i)] + b[size_t(i)]) % p_;
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r{0, 0, 0};
  for (int i = 0; i < k_; ++i)
    r[size_t(i)] = (a[size_t(i)] + p_ - b[size_t(i)]) % p_;
  return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const { return sub(zero(), a); }

ExtField::Elem ExtField::scalar_mul(uint64_t c, const Elem& a) const {
  c %= p_;
  Elem r{0, 0, 0};
  for (int i = 0; i < k_; ++i) r[size_t(i)] = mul_mod(c, a[size_t(i)], p_);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  // schoolbook product, then reduce by x^k = -(c_{k-1} x^{k-1} + ... + c_0)
  uint64_t prod[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      prod[i + j] = (prod[i + j] + mul_mod(a[size_t(i)], b[size_t(j)], p_)) % p_;
  for (int d = 2 * (k_ - 1); d >= k_; --d) {
    uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k_; ++i) {
      uint64_t sub_term = mul_mod(c, mod_[size_t(i)], p_);
      prod[d - k_ + i] = (prod[d - k_ + i] + p_ - sub_term) % p_;
    }
  }
  Elem r{0, 0, 0};
  for (int i = 0; i < k_; ++i) r[size_t(i)] = prod[i];
  return r;
}

ExtField::Elem ExtField::pow(Elem a, uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace powersieve
