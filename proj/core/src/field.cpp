#include "powersieve/field.hpp"

#include <algorithm>
#include <cmath>

namespace powersieve {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t mod) {
  return uint64_t((__uint128_t)a * b % mod);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t mod) {
  long long t = 0, nt = 1;
  long long r = (long long)mod, nr = (long long)(a % mod);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw InvalidInput("inv_mod: arguments not coprime");
  return uint64_t(t < 0 ? t + (long long)mod : t);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit with the standard witness set
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int nu_distinct_prime_divisors(long long n) {
  if (n == 0) throw InvalidInput("nu(0) is undefined");
  uint64_t m = n < 0 ? uint64_t(-n) : uint64_t(n);
  return int(factorize(m).size());
}

std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t n = lo + 1; n <= hi && n >= lo + 1; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

std::vector<uint64_t> primes_one_mod_r(uint64_t lo, uint64_t hi, uint64_t r) {
  if (r < 2) throw InvalidInput("primes_one_mod_r: r must be >= 2");
  std::vector<uint64_t> out;
  for (uint64_t p : primes_in(lo, hi))
    if (p % r == 1) out.push_back(p);
  return out;
}

uint64_t primitive_root(uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("primitive_root: p is not prime");
  if (p == 2) return 1;
  auto fac = factorize(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [q, e] : fac) {
      (void)e;
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InvalidInput("primitive_root: none found");  // unreachable for prime p
}

Turn additive_char_turn(uint64_t p, long long t) {
  if (p < 2) throw InvalidInput("additive character needs modulus >= 2");
  long long m = t % (long long)p;
  if (m < 0) m += (long long)p;
  return Turn(m, (long long)p);
}

std::complex<double> additive_char(uint64_t p, long long t) {
  return additive_char_turn(p, t).value();
}

namespace {
constexpr uint64_t kDlogTableLimit = 1ULL << 20;
}

PowerCharacter::PowerCharacter(uint64_t p, uint64_t r) : p_(p), r_(r) {
  if (r < 2) throw InvalidInput("power character needs r >= 2");
  if (!is_prime(p)) throw InvalidInput("power character modulus must be prime");
  if ((p - 1) % r != 0)
    throw InvalidInput("power character needs p == 1 (mod r)");
  g_ = primitive_root(p);
  if (p < kDlogTableLimit) {
    table_.assign(size_t(p), 0);
    uint64_t x = 1;
    for (uint64_t e = 0; e < p - 1; ++e) {
      table_[size_t(x)] = uint32_t(e);
      x = mul_mod(x, g_, p);
    }
  }
}

uint64_t PowerCharacter::dlog(uint64_t a) const {
  a %= p_;
  if (a == 0) throw InvalidInput("dlog of 0");
  if (!table_.empty()) return table_[size_t(a)];
  // baby-step giant-step
  uint64_t m = uint64_t(std::ceil(std::sqrt(double(p_ - 1))));
  std::unordered_map<uint64_t, uint64_t> baby;
  baby.reserve(static_cast<size_t>(m));
  uint64_t cur = 1;
  for (uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, g_, p_);
  }
  uint64_t giant = inv_mod(cur, p_);  // g^{-m}
  uint64_t gamma = a;
  for (uint64_t i = 0; i < m + 1; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return (i * m + it->second) % (p_ - 1);
    gamma = mul_mod(gamma, giant, p_);
  }
  throw InvalidInput("dlog: not found");  // unreachable
}

CharValue PowerCharacter::operator()(long long n) const {
  long long m = n % (long long)p_;
  if (m < 0) m += (long long)p_;
  if (m == 0) return CharValue::zero();
  // chi(g^e) = theta(g^{e(p-1)/r}) = e(e/r mod 1)
  return CharValue::unit(Turn((long long)(dlog(uint64_t(m)) % r_), (long long)r_));
}

Character Character::times(const Character& o) const {
  Character out = *this;
  for (auto& [chi, e] : o.factors_) {
    bool merged = false;
    for (auto& [mine, me] : out.factors_) {
      if (mine.modulus() == chi.modulus() && mine.order() == chi.order()) {
        me += e;
        merged = true;
        break;
      }
    }
    if (!merged) out.factors_.emplace_back(chi, e);
  }
  return out;
}

Character Character::conj() const {
  Character out = *this;
  for (auto& [chi, e] : out.factors_) {
    (void)chi;
    e = -e;
  }
  return out;
}

CharValue Character::operator()(long long n) const {
  CharValue v = CharValue::one();
  for (const auto& [chi, e] : factors_) {
    long long m = n % (long long)chi.modulus();
    if (m < 0) m += (long long)chi.modulus();
    if (m == 0) return CharValue::zero();
    long long k = (long long)(chi.dlog(uint64_t(m)) % chi.order());
    v = v * CharValue::unit(Turn(k * e, (long long)chi.order()));
  }
  return v;
}

uint64_t Character::modulus() const {
  uint64_t q = 1;
  for (const auto& [chi, e] : factors_) {
    int mult = e < 0 ? -e : e;
    for (int i = 0; i < mult; ++i) q *= chi.modulus();
  }
  return q;
}

bool Character::is_principal() const {
  for (const auto& [chi, e] : factors_) {
    long long net = e % (long long)chi.order();
    if (net != 0) return false;
  }
  return true;
}

long long Character::angle_denominator() const {
  long long d = 1;
  for (const auto& [chi, e] : factors_) {
    (void)e;
    d = std::lcm(d, (long long)chi.order());
  }
  return d;
}

std::vector<uint64_t> Character::prime_factors() const {
  std::vector<uint64_t> ps;
  for (const auto& [chi, e] : factors_) {
    (void)e;
    if (std::find(ps.begin(), ps.end(), chi.modulus()) == ps.end())
      ps.push_back(chi.modulus());
  }
  std::sort(ps.begin(), ps.end());
  return ps;
}

Character composite_character(const std::vector<uint64_t>& primes, uint64_t r) {
  Character out;
  for (size_t i = 0; i < primes.size(); ++i) {
    for (size_t j = 0; j < i; ++j)
      if (primes[i] == primes[j])
        throw InvalidInput("composite character needs distinct primes");
    out = out.times(Character(PowerCharacter(primes[i], r)));
  }
  return out;
}

}  // namespace powersieve
