// Command-line front end: every subcommand parses a flat config, runs one
// library pipeline, and emits a JSON or CSV report. Exit codes: 0 success,
// 1 precondition error, 2 point-budget error.
#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "powersieve/charsum.hpp"
#include "powersieve/counting.hpp"
#include "powersieve/geometry.hpp"
#include "powersieve/report.hpp"
#include "powersieve/sieve.hpp"

using namespace powersieve;

namespace {

uint64_t budget_cap() {
  if (const char* env = std::getenv("POWERSIEVE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw InvalidInput("POWERSIEVE_BUDGET must be a positive integer");
  }
  return 100'000'000;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output path: " + path);
  out << text;
}

std::vector<std::string> count_csv_header() {
  return {"B", "r", "poly", "exact_count", "weighted_count", "zero_count"};
}

// Deterministic exact-identity suite: character algebra, sieve
// decomposition, differencing shift identity, divisor-sum
// multiplicativity, and modular-vs-integer evaluation, all driven by one
// seed. Emits a single JSON object.
ordered_json run_selftest(uint64_t seed) {
  ordered_json out;
  out["seed"] = seed;
  SplitMix64 rng(seed);
  bool ok = true;

  // character identities
  {
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
      const uint64_t ps[] = {7, 13, 19, 31};
      uint64_t p = ps[rng.below(4)];
      PowerCharacter chi(p, 3);
      long long m = rng.range(1, (long long)p - 1);
      long long n = rng.range(1, (long long)p - 1);
      CharValue lhs = chi(m * n);
      CharValue rhs = chi(m) * chi(n);
      if (!(lhs.turn == rhs.turn)) ok = false;
      KahanComplex full;
      for (long long a = 0; a < (long long)p; ++a) full.add(chi(a).value());
      worst = std::max(worst, std::abs(full.sum()));
      if (!(chi(m * m * m).turn == Turn(0, 1))) ok = false;
    }
    out["character_sum_residual"] = worst;
    ok = ok && worst < 1e-9;
  }

  // sieve decomposition identity on a random weight
  {
    SieveSets sets = make_sieve_sets({13, 17, 29}, {5}, 2);
    SieveWeight omega;
    for (int i = 0; i < 50; ++i) omega.support[rng.range(-40, 40)] = rng.unit();
    SigmaReport rep = sigma_decomposition(omega, sets);
    out["sieve_identity_relerr"] = rep.identity_relerr;
    out["sieve_split_relerr"] = rep.sv_split_relerr;
    ok = ok && rep.identity_relerr < 1e-9 && rep.sv_split_relerr < 1e-9;
  }

  // shift identity for differencing correlations
  {
    BumpWeight w;
    Budget budget(budget_cap());
    MultiPoly f = MultiPoly::parse("x1^3+x2^3", 2);
    Character chi1 = Character(PowerCharacter(7, 3));
    std::vector<long long> h1{rng.range(1, 2), rng.range(1, 2)};
    std::vector<long long> h2{rng.range(1, 2), rng.range(1, 2)};
    std::vector<long long> d{h1[0] - h2[0], h1[1] - h2[1]};
    std::vector<long long> zero{0, 0};
    auto a = vdc_correlation(f, chi1, 13, h1, h2, 26, w, budget);
    auto b = vdc_correlation(f, chi1, 13, d, zero, 26, w, budget);
    out["shift_identity_relerr"] = rel_err(a, b);
    ok = ok && rel_err(a, b) < 1e-9;
  }

  // multiplicativity of divisor-restricted sums
  {
    Budget budget(budget_cap());
    MultiPoly h = MultiPoly::parse("x1^2+x2^2", 2);
    MultiPoly g = MultiPoly::parse("x1^3+x2^3", 2);
    std::vector<long long> v{rng.range(0, 34), rng.range(0, 34)};
    MultiplicativityReport rep = multiplicativity_check(5, 7, h, g, v, budget);
    out["multiplicativity_relerr"] = rep.relerr;
    ok = ok && rep.ok;
  }

  // modular evaluation against exact integers
  {
    bool eval_ok = true;
    for (int t = 0; t < 200; ++t) {
      MultiPoly f(2);
      for (int term = 0; term < 3; ++term) {
        MultiPoly::Expo e{uint32_t(rng.below(4)), uint32_t(rng.below(4))};
        f.add_term(e, mpz_class(long(rng.range(-9, 9))));
      }
      uint64_t p = 11;
      std::vector<long long> x{rng.range(-30, 30), rng.range(-30, 30)};
      std::vector<uint64_t> xm{uint64_t(((x[0] % 11) + 11) % 11),
                               uint64_t(((x[1] % 11) + 11) % 11)};
      mpz_class wantz = f.eval_int(x) % 11;
      if (wantz < 0) wantz += 11;
      if (f.eval_mod_p(xm, p) != wantz.get_ui()) eval_ok = false;
    }
    out["modular_eval_ok"] = eval_ok;
    ok = ok && eval_ok;
  }

  out["ok"] = ok;
  return out;
}

struct Common {
  std::string output;
  std::string format = "json";
  std::string config;
  uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--output", c.output, "Output path (default: stdout)");
  cmd->add_option("--format", c.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", c.seed, "Seed for all randomized draws");
  cmd->add_option("--config", c.config,
                  "Flat key=value config file (# comments); "
                  "command-line flags take precedence");
}

// Expand a flat key=value config file into flags, keeping any flag the user
// already passed on the command line.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file: " + path);
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config line missing '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidInput("config line missing key: " + line);
    std::string flag = "--" + key;
    bool on_cli = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) on_cli = true;
    if (on_cli) continue;
    args.push_back(flag);
    std::istringstream vs(value);
    std::string tok;
    while (vs >> tok) args.push_back(tok);
  }
  return args;
}

std::vector<long long> parse_ll_list(const std::vector<std::string>& raw) {
  std::vector<long long> out;
  for (const auto& s : raw) out.push_back(std::stoll(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "powersieve: counts integer points on cyclic covers y^r = F(x) in "
      "boxes, decomposes the power-residue sieve exactly, evaluates "
      "complete and box-restricted character sums over finite fields, and "
      "estimates singular-locus dimensions by point counting"};
  app.require_subcommand(1);

  Common c;
  std::string poly_text;
  int nvars = 2, r = 2;
  std::vector<std::string> B_list{"20"};
  double delta = 1.0, alpha = 2.0 / 3;

  // count: weighted and exact solution-pair counts for y^r = f(x), |x| <= B
  auto* count = app.add_subcommand(
      "count", "Count pairs (y, x) with y^r = f(x), x in [-B, B]^n, both "
               "exactly and with the smooth bump weight");
  count->add_option("--poly", poly_text, "Polynomial, e.g. \"x1^3+x2^3\"")
      ->required();
  count->add_option("--n", nvars, "Number of variables");
  count->add_option("--r", r, "Power exponent r >= 2");
  count->add_option("--B", B_list, "Box radius (repeatable for several runs)");
  add_common(count, c);

  // sieve
  auto* sieve = app.add_subcommand(
      "sieve", "Decompose the power-sieve character average into diagonal, "
               "coprime, and per-set terms, and verify the sieve inequality");
  sieve->add_option("--poly", poly_text, "Polynomial defining the weight")
      ->required();
  sieve->add_option("--n", nvars, "Number of variables");
  sieve->add_option("--r", r, "Power exponent");
  sieve->add_option("--B", B_list, "Box radius");
  sieve->add_option("--delta", delta, "Sieve scale: Q = B^delta");
  sieve->add_option("--alpha", alpha, "Window split exponent in [2/3, 1)");
  add_common(sieve, c);

  // charsum
  std::string h_text, g_text;
  uint64_t cs_p = 11, cs_a = 0, cs_b = 0;
  std::vector<std::string> v_list;
  std::vector<uint64_t> q_factors;
  auto* charsum = app.add_subcommand(
      "charsum", "Complete additive character sum of a*h(x)+b*g(x)+v.x over "
                 "all residues mod p, normalized by p^{n/2}");
  charsum->add_option("--hpoly", h_text, "Polynomial h")->required();
  charsum->add_option("--gpoly", g_text, "Polynomial g")->required();
  charsum->add_option("--n", nvars, "Number of variables");
  charsum->add_option("--p", cs_p, "Prime modulus");
  charsum->add_option("--a", cs_a, "Coefficient of h");
  charsum->add_option("--b", cs_b, "Coefficient of g");
  charsum->add_option("--v", v_list, "Linear twist vector entries");
  add_common(charsum, c);

  // vdc
  uint64_t q1 = 7, q2 = 13;
  auto* vdc = app.add_subcommand(
      "vdc", "Differencing decomposition of the twisted box sum: shift "
             "identities, the Cauchy-Schwarz step, and per-shift "
             "correlations with the modulus lowered to q1");
  vdc->add_option("--poly", poly_text, "Polynomial f")->required();
  vdc->add_option("--n", nvars, "Number of variables");
  vdc->add_option("--r", r, "Character order");
  vdc->add_option("--q1", q1, "Retained modulus (prime == 1 mod r)");
  vdc->add_option("--q2", q2, "Differenced modulus (prime == 1 mod r)");
  vdc->add_option("--B", B_list, "Box radius");
  add_common(vdc, c);

  // poisson
  double L = 50;
  auto* poisson = app.add_subcommand(
      "poisson", "Compare the divisor-restricted lattice sum with its "
                 "density main term phi(q)/q^2 * sum W(x/L) and normalize "
                 "the residual by the singular-locus bound");
  poisson->add_option("--hpoly", h_text, "Polynomial h (divisibility condition)")
      ->required();
  poisson->add_option("--gpoly", g_text, "Polynomial g (coprimality condition)")
      ->required();
  poisson->add_option("--n", nvars, "Number of variables");
  poisson->add_option("--q", q_factors, "Prime factors of q (one or two)")
      ->required();
  poisson->add_option("--L", L, "Window scale L >= 1");
  add_common(poisson, c);

  // geometry
  uint64_t geo_p = 7;
  long long hbox = 3;
  auto* geometry = app.add_subcommand(
      "geometry", "Estimate the singular-locus dimension of the leading form "
                  "by point counts over extension fields, plus the histogram "
                  "of locus dimensions over shift vectors in a box");
  geometry->add_option("--poly", poly_text, "Homogeneous form")->required();
  geometry->add_option("--n", nvars, "Number of variables");
  geometry->add_option("--p", geo_p, "Prime");
  geometry->add_option("--hbox", hbox, "Shift box radius");
  add_common(geometry, c);

  // fit
  auto* fit = app.add_subcommand(
      "fit", "Run counts over several box radii and report the least-squares "
             "growth exponent next to the reference exponents");
  fit->add_option("--poly", poly_text, "Polynomial f")->required();
  fit->add_option("--n", nvars, "Number of variables");
  fit->add_option("--r", r, "Power exponent");
  fit->add_option("--B", B_list, "Box radii (need >= 3)")->required();
  add_common(fit, c);

  // selftest
  auto* selftest = app.add_subcommand(
      "selftest", "Seeded exact-identity suite across all modules; emits one "
                  "deterministic JSON object");
  add_common(selftest, c);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    Budget budget(budget_cap());
    BumpWeight w;

    if (*count || *fit) {
      std::vector<long long> Bs = parse_ll_list(B_list);
      for (long long B : Bs)
        if (B < 1) throw InvalidInput("B must be >= 1");
      if (*fit && Bs.size() < 3)
        throw InvalidInput("fit needs at least 3 box radii");
      MultiPoly f = MultiPoly::parse(poly_text, nvars);
      std::vector<CountReport> reports;
      for (long long B : Bs)
        reports.push_back(weighted_count(f, r, B, w, budget));
      if (*fit) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& rep : reports)
          pts.emplace_back(double(rep.B), std::max(1.0, rep.weighted_count));
        ordered_json j;
        j["slope"] = exponent_fit(pts);
        j["reference_theorem_low"] =
            reference_exponent(nvars, RefExponent::theorem1_low).value();
        j["reference_theorem_high"] =
            reference_exponent(nvars, RefExponent::theorem1_high).value();
        j["counts"] = csv_rows(reports);
        write_out(c.format == "csv" ? to_csv(count_csv_header(), csv_rows(reports))
                                    : render_json(j),
                  c.output);
      } else if (c.format == "csv") {
        write_out(to_csv(count_csv_header(), csv_rows(reports)), c.output);
      } else {
        std::string text;
        for (const auto& rep : reports) text += render_json(to_json(rep));
        write_out(text, c.output);
      }
    } else if (*sieve) {
      long long B = parse_ll_list(B_list).at(0);
      if (B < 1) throw InvalidInput("B must be >= 1");
      MultiPoly f = MultiPoly::parse(poly_text, nvars);
      SieveSets sets = build_sieve_sets(B, delta, alpha, r);
      SieveWeight omega = sieve_weight_from_poly(f, B, w, budget);
      SigmaReport sig = sigma_decomposition(omega, sets);
      SieveInequalityReport ineq = verify_sieve_inequality(omega, sets, true);
      ordered_json j = to_json(sig);
      ordered_json jineq = to_json(ineq);
      for (auto& [k, v] : jineq.items()) j[k] = v;
      write_out(render_json(j), c.output);
    } else if (*charsum) {
      MultiPoly h = MultiPoly::parse(h_text, nvars);
      MultiPoly g = MultiPoly::parse(g_text, nvars);
      std::vector<uint64_t> v(size_t(nvars), 0);
      auto raw = parse_ll_list(v_list);
      for (size_t i = 0; i < raw.size() && i < v.size(); ++i)
        v[i] = uint64_t(((raw[i] % (long long)cs_p) + (long long)cs_p) %
                        (long long)cs_p);
      SumReport rep = mixed_complete_sum(cs_p, h, g, cs_a, cs_b, v, budget);
      write_out(render_json(to_json(rep)), c.output);
    } else if (*vdc) {
      long long B = parse_ll_list(B_list).at(0);
      MultiPoly f = MultiPoly::parse(poly_text, nvars);
      Character chi1 = Character(PowerCharacter(q1, uint64_t(r)));
      Character chi2 = Character(PowerCharacter(q2, uint64_t(r)));
      VdcDecomposition dec =
          vdc_decompose(f, chi1, chi2, B, w, budget, c.seed);
      write_out(render_json(to_json(dec)), c.output);
    } else if (*poisson) {
      MultiPoly h = MultiPoly::parse(h_text, nvars);
      MultiPoly g = MultiPoly::parse(g_text, nvars);
      PoissonReport rep =
          poisson_identity_check(q_factors, h, g, Window(nvars), L, budget);
      write_out(render_json(to_json(rep)), c.output);
    } else if (*geometry) {
      MultiPoly F = MultiPoly::parse(poly_text, nvars);
      SingularLocusReport locus = singular_locus_dim(F.leading_form(), geo_p,
                                                     3, budget);
      Lemma3Report hist = lemma3_histogram(F, hbox, geo_p, budget);
      ordered_json j = to_json(locus);
      ordered_json jhist = to_json(hist);
      for (auto& [k, v] : jhist.items()) j[k] = v;
      write_out(render_json(j), c.output);
    } else if (*selftest) {
      ordered_json j = run_selftest(c.seed);
      write_out(render_json(j), c.output);
      if (!j["ok"].get<bool>()) return 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
