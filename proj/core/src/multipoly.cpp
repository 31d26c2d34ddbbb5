#include "powersieve/multipoly.hpp"

#include <algorithm>
#include <cctype>

#include "powersieve/field.hpp"

namespace powersieve {

bool GradedLex::operator()(const std::vector<uint32_t>& a,
                           const std::vector<uint32_t>& b) const {
  uint64_t da = 0, db = 0;
  for (uint32_t e : a) da += e;
  for (uint32_t e : b) db += e;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(int nvars, const mpz_class& c) {
  MultiPoly f(nvars);
  f.add_term(Expo(size_t(nvars), 0), c);
  return f;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InvalidInput("variable index out of range");
  MultiPoly f(nvars);
  Expo e(size_t(nvars), 0);
  e[size_t(i)] = 1;
  f.add_term(e, 1);
  return f;
}

void MultiPoly::add_term(const Expo& e, const mpz_class& c) {
  if (int(e.size()) != nvars_) throw InvalidInput("exponent vector dimension");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  // graded order: last term has maximal total degree
  const Expo& e = terms_.rbegin()->first;
  int d = 0;
  for (uint32_t x : e) d += int(x);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree();
  for (const auto& [e, c] : terms_) {
    (void)c;
    int de = 0;
    for (uint32_t x : e) de += int(x);
    if (de != d) return false;
  }
  return true;
}

const mpz_class& MultiPoly::constant_term() const {
  static const mpz_class zero = 0;
  auto it = terms_.find(Expo(size_t(nvars_), 0));
  return it == terms_.end() ? zero : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("variable count mismatch");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("variable count mismatch");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("variable count mismatch");
  MultiPoly r(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(static_cast<size_t>(nvars_));
      for (int i = 0; i < nvars_; ++i)
        e[size_t(i)] = ea[size_t(i)] + eb[size_t(i)];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const mpz_class& c) const {
  MultiPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.add_term(e, k * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(nvars_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

MultiPoly MultiPoly::leading_form() const {
  if (terms_.empty()) throw InvalidInput("leading form of the zero polynomial");
  int d = degree();
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int de = 0;
    for (uint32_t x : e) de += int(x);
    if (de == d) r.add_term(e, c);
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::gradient() const {
  std::vector<MultiPoly> g;
  g.reserve(static_cast<size_t>(nvars_));
  for (int i = 0; i < nvars_; ++i) {
    MultiPoly d(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[size_t(i)] == 0) continue;
      Expo e2 = e;
      e2[size_t(i)] -= 1;
      d.add_term(e2, c * e[size_t(i)]);
    }
    g.push_back(std::move(d));
  }
  return g;
}

MultiPoly MultiPoly::shift(std::span<const long long> t) const {
  if (int(t.size()) != nvars_) throw InvalidInput("shift dimension mismatch");
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    // expand c * prod_i (x_i + t_i)^{e_i}
    MultiPoly term = constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[size_t(i)] == 0) continue;
      MultiPoly lin = variable(nvars_, i) + constant(nvars_, mpz_class(static_cast<long>(t[size_t(i)])));
      term = term * lin.pow(e[size_t(i)]);
    }
    r = r + term;
  }
  return r;
}

MultiPoly MultiPoly::shift_scale_compose(std::span<const long long> t,
                                         const mpz_class& c) const {
  return shift(t) - scaled(c);
}

mpz_class MultiPoly::eval_int(std::span<const long long> x) const {
  if (int(x.size()) != nvars_) throw InvalidInput("evaluation dimension");
  mpz_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class term = c;
    for (int i = 0; i < nvars_; ++i) {
      mpz_class b = mpz_class((long)x[size_t(i)]);
      for (uint32_t j = 0; j < e[size_t(i)]; ++j) term *= b;
    }
    acc += term;
  }
  return acc;
}

uint64_t MultiPoly::eval_mod_p(std::span<const uint64_t> x, uint64_t p) const {
  if (int(x.size()) != nvars_) throw InvalidInput("evaluation dimension");
  uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class cm = c % mpz_class((unsigned long)p);
    if (cm < 0) cm += mpz_class((unsigned long)p);
    uint64_t term = cm.get_ui();
    for (int i = 0; i < nvars_; ++i)
      if (e[size_t(i)] > 0)
        term = mul_mod(term, pow_mod(x[size_t(i)] % p, e[size_t(i)], p), p);
    acc = (acc + term) % p;
  }
  return acc;
}

ExtField::Elem MultiPoly::eval_ext(const ExtField& F,
                                   std::span<const ExtField::Elem> x) const {
  if (int(x.size()) != nvars_) throw InvalidInput("evaluation dimension");
  ExtField::Elem acc = F.zero();
  for (const auto& [e, c] : terms_) {
    mpz_class cm = c % mpz_class((unsigned long)F.p());
    if (cm < 0) cm += mpz_class((unsigned long)F.p());
    ExtField::Elem term = F.from_int(cm.get_ui());
    for (int i = 0; i < nvars_; ++i)
      if (e[size_t(i)] > 0)
        term = F.mul(term, F.pow(x[size_t(i)], e[size_t(i)]));
    acc = F.add(acc, term);
  }
  return acc;
}

MultiPoly MultiPoly::reduced_mod(uint64_t p) const {
  MultiPoly r(nvars_);
  mpz_class m((unsigned long)p);
  for (const auto& [e, c] : terms_) {
    mpz_class cm = c % m;
    if (cm < 0) cm += m;
    r.add_term(e, cm);
  }
  return r;
}

// ---- parsing --------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  int nvars;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("parse error at position " + std::to_string(pos) + ": " +
                       what);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected integer");
    return mpz_class(s.substr(start, pos - start));
  }
  // factor := integer | x<idx> ['^' integer]
  MultiPoly factor() {
    skip_ws();
    if (pos >= s.size()) fail("expected factor");
    if (std::isdigit((unsigned char)s[pos]))
      return MultiPoly::constant(nvars, integer());
    if (s[pos] == 'x') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (pos == start) fail("expected variable index after 'x'");
      long idx = std::stol(s.substr(start, pos - start));
      if (idx < 1 || idx > nvars)
        fail("variable index " + std::to_string(idx) + " out of range 1.." +
             std::to_string(nvars));
      MultiPoly v = MultiPoly::variable(nvars, int(idx - 1));
      if (eat('^')) {
        mpz_class e = integer();
        if (e < 0 || e > 4096) fail("exponent out of range");
        return v.pow(unsigned(e.get_ui()));
      }
      return v;
    }
    fail("unexpected character '" + std::string(1, s[pos]) + "'");
  }
  // term := factor ('*' factor)*
  MultiPoly term() {
    MultiPoly t = factor();
    while (eat('*')) t = t * factor();
    return t;
  }
  MultiPoly expression() {
    MultiPoly acc(nvars);
    bool negative = false;
    skip_ws();
    if (eat('-'))
      negative = true;
    else
      eat('+');
    while (true) {
      MultiPoly t = term();
      acc = negative ? acc - t : acc + t;
      skip_ws();
      if (eat('-'))
        negative = true;
      else if (eat('+'))
        negative = false;
      else
        break;
    }
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return acc;
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, int nvars) {
  if (nvars < 1) throw InvalidInput("polynomial needs at least one variable");
  Parser p{text, nvars};
  return p.expression();
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest degree first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpz_class a = c;
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[size_t(i)] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[size_t(i)] > 1) mono += "^" + std::to_string(e[size_t(i)]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

// ---- mod-p helpers ---------------------------------------------------------

CompiledPolyModP::CompiledPolyModP(const MultiPoly& f, uint64_t prime)
    : p(prime), nvars(f.nvars()), max_exp(0) {
  mpz_class m((unsigned long)p);
  for (const auto& [e, c] : f.terms()) {
    mpz_class cm = c % m;
    if (cm < 0) cm += m;
    if (cm == 0) continue;
    coeffs.push_back(cm.get_ui());
    for (int i = 0; i < nvars; ++i) {
      expos.push_back(e[size_t(i)]);
      max_exp = std::max(max_exp, e[size_t(i)]);
    }
  }
}

uint64_t CompiledPolyModP::eval(std::span<const uint64_t> x) const {
  uint64_t acc = 0;
  const uint32_t* e = expos.data();
  for (uint64_t c : coeffs) {
    uint64_t term = c;
    for (int i = 0; i < nvars; ++i, ++e) {
      uint32_t k = *e;
      if (k == 0) continue;
      uint64_t b = x[size_t(i)];
      uint64_t pw = 1;
      while (k) {
        if (k & 1) pw = mul_mod(pw, b, p);
        b = mul_mod(b, b, p);
        k >>= 1;
      }
      term = mul_mod(term, pw, p);
    }
    acc = (acc + term) % p;
  }
  return acc;
}

bool is_nonsingular_form_mod_p(const MultiPoly& F, uint64_t p, Budget& budget) {
  if (F.is_zero() || F.degree() < 1)
    throw InvalidInput("nonsingularity check needs a form of degree >= 1");
  if (!F.is_homogeneous())
    throw InvalidInput("nonsingularity check needs a homogeneous form");
  int n = F.nvars();
  CompiledPolyModP f(F.reduced_mod(p), p);
  std::vector<CompiledPolyModP> grad;
  for (const auto& d : F.gradient()) grad.emplace_back(d.reduced_mod(p), p);

  std::vector<uint64_t> x(size_t(n), 0);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget.cap() / p) throw BudgetError("p^n exceeds point budget");
    total *= p;
  }
  for (uint64_t idx = 1; idx < total; ++idx) {  // skip the origin
    budget.charge();
    uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = t % p;
      t /= p;
    }
    if (f.eval(x) != 0) continue;
    bool singular = true;
    for (const auto& d : grad)
      if (d.eval(x) != 0) {
        singular = false;
        break;
      }
    if (singular) return false;
  }
  return true;
}

}  // namespace powersieve
