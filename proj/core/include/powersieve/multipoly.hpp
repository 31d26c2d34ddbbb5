#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

#include "powersieve/extfield.hpp"

namespace powersieve {

// Graded-lex order on exponent vectors: total degree first, then lex.
// Gives deterministic term ordering for printing and fixtures.
struct GradedLex {
  bool operator()(const std::vector<uint32_t>& a,
                  const std::vector<uint32_t>& b) const;
};

// Sparse multivariate polynomial with exact arbitrary-precision integer
// coefficients. No zero coefficients are ever stored.
class MultiPoly {
 public:
  using Expo = std::vector<uint32_t>;
  using TermMap = std::map<Expo, mpz_class, GradedLex>;

  explicit MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw InvalidInput("polynomial needs at least one variable");
  }
  static MultiPoly constant(int nvars, const mpz_class& c);
  static MultiPoly variable(int nvars, int i);  // x_{i+1}, 0-based i

  // Grammar: signed integer-coefficient monomials in x1..xn, '^' powers,
  // '*' products, '+'/'-'. Errors carry the byte position.
  static MultiPoly parse(const std::string& text, int nvars);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // total degree; -1 for the zero polynomial
  bool is_homogeneous() const;
  const TermMap& terms() const { return terms_; }
  const mpz_class& constant_term() const;

  void add_term(const Expo& e, const mpz_class& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const mpz_class& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  // Homogeneous part of top degree. Throws on the zero polynomial.
  MultiPoly leading_form() const;
  std::vector<MultiPoly> gradient() const;
  // f(x + t) - c*f(x), expanded exactly.
  MultiPoly shift_scale_compose(std::span<const long long> t,
                                const mpz_class& c) const;
  MultiPoly shift(std::span<const long long> t) const;

  mpz_class eval_int(std::span<const long long> x) const;
  uint64_t eval_mod_p(std::span<const uint64_t> x, uint64_t p) const;
  ExtField::Elem eval_ext(const ExtField& F,
                          std::span<const ExtField::Elem> x) const;

  // Coefficients reduced into [0, p); terms vanishing mod p dropped.
  MultiPoly reduced_mod(uint64_t p) const;

  std::string str() const;  // round-trips through parse

 private:
  int nvars_;
  TermMap terms_;
};

// True iff the homogeneous form F of degree >= 1 has no nonzero singular
// point over F_p: no x != 0 with F(x) = 0 and grad F(x) = 0 (exhaustive).
bool is_nonsingular_form_mod_p(const MultiPoly& F, uint64_t p, Budget& budget);

// Polynomial compiled against a fixed prime for hot evaluation loops.
struct CompiledPolyModP {
  CompiledPolyModP(const MultiPoly& f, uint64_t p);
  uint64_t eval(std::span<const uint64_t> x) const;  // x entries in [0, p)

  uint64_t p;
  int nvars;
  uint32_t max_exp;
  std::vector<uint64_t> coeffs;
  std::vector<uint32_t> expos;  // nvars entries per term
};

}  // namespace powersieve
