#include "powersieve/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace powersieve {

namespace {

// %.17g round-trips doubles and is locale-independent via snprintf with the
// C locale assumed; keeps repeated runs byte-identical.
std::string fmt_double(double v) {
  if (std::isnan(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  // make integral doubles visibly floats so CSV/JSON typing is stable
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void render(const ordered_json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(it.key()).dump();
        out += ':';
        render(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::detail::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        render(e, out);
      }
      out += ']';
      break;
    }
    case nlohmann::detail::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

std::string csv_field(const ordered_json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_float())
    s = fmt_double(v.get<double>());
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return s;
}

}  // namespace

ordered_json to_json(const CountReport& r) {
  ordered_json j;
  j["B"] = r.B;
  j["r"] = r.r;
  j["poly"] = r.poly;
  j["exact_count"] = r.exact_count;
  j["weighted_count"] = r.weighted_count;
  j["zero_count"] = r.zero_count;
  return j;
}

ordered_json to_json(const SigmaReport& r) {
  ordered_json j;
  j["Sigma"] = r.Sigma;
  j["diagonal"] = r.diagonal;
  j["coprime"] = r.coprime;
  j["S_U"] = r.S_U;
  j["S_V"] = r.S_V;
  j["M_V"] = r.M_V;
  j["E_V"] = r.E_V;
  j["identity_relerr"] = r.identity_relerr;
  j["sv_split_relerr"] = r.sv_split_relerr;
  return j;
}

ordered_json to_json(const SieveInequalityReport& r) {
  ordered_json j;
  j["lhs"] = r.lhs;
  j["trivial_term"] = r.trivial_term;
  j["main_sieve"] = r.main_sieve;
  j["prime_sieve"] = r.prime_sieve;
  j["rhs"] = r.rhs;
  j["C_measured"] = r.C_measured;
  j["hypotheses_ok"] = r.hypotheses_ok;
  j["note"] = r.note;
  return j;
}

ordered_json to_json(const SumReport& r) {
  ordered_json j;
  j["sum_re"] = r.value.real();
  j["sum_im"] = r.value.imag();
  j["abs"] = std::abs(r.value);
  j["terms"] = r.term_count;
  j["normalized"] = r.normalized;
  j["bound_terms"] = r.bound_terms;
  j["ratio"] = r.ratio;
  return j;
}

ordered_json to_json(const VdcDecomposition& r) {
  ordered_json j;
  j["H"] = r.H;
  j["sum_re"] = r.T.real();
  j["sum_im"] = r.T.imag();
  j["Sigma1"] = r.Sigma1;
  j["Sigma2"] = r.Sigma2;
  j["Sigma2A"] = r.Sigma2A;
  j["Sigma2B"] = r.Sigma2B;
  j["sum_abs_T_h"] = r.sum_abs_T_h;
  j["cauchy_lhs"] = r.cauchy_lhs;
  j["cauchy_rhs"] = r.cauchy_rhs;
  j["cauchy_ok"] = r.cauchy_ok;
  j["sigma2B_bound_ok"] = r.sigma2B_bound_ok;
  j["shift_identity_max_relerr"] = r.shift_identity_max_relerr;
  j["th_equals_corr_max_relerr"] = r.th_equals_corr_max_relerr;
  return j;
}

ordered_json to_json(const MultiplicativityReport& r) {
  ordered_json j;
  j["direct_re"] = r.direct.real();
  j["direct_im"] = r.direct.imag();
  j["product_re"] = r.product.real();
  j["product_im"] = r.product.imag();
  j["relerr"] = r.relerr;
  j["ok"] = r.ok;
  return j;
}

ordered_json to_json(const PoissonReport& r) {
  ordered_json j;
  j["q"] = r.q;
  j["s"] = r.s;
  j["S"] = r.S;
  j["main_term"] = r.main_term;
  j["residual"] = r.residual;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  j["hypotheses_ok"] = r.hypotheses_ok;
  j["note"] = r.note;
  return j;
}

ordered_json to_json(const Prop1Report& r) {
  ordered_json j;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json je;
    je["q1"] = e.q1;
    je["q2"] = e.q2;
    je["B"] = e.B;
    je["abs"] = e.abs_T;
    je["rhs"] = e.rhs;
    je["ratio"] = e.ratio;
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["max_ratio"] = r.max_ratio;
  return j;
}

ordered_json to_json(const SingularLocusReport& r) {
  ordered_json j;
  j["p"] = r.p;
  j["counts"] = r.counts;
  j["dim_estimate"] = r.dim_estimate;
  j["exact"] = r.exact;
  return j;
}

ordered_json to_json(const Lemma3Report& r) {
  ordered_json j;
  ordered_json hist = ordered_json::object();
  ordered_json ratios = ordered_json::object();
  for (const auto& [s, c] : r.histogram) hist[std::to_string(s)] = c;
  for (const auto& [s, v] : r.ratios) ratios[std::to_string(s)] = v;
  j["histogram"] = hist;
  j["ratios"] = ratios;
  j["total"] = r.total;
  j["max_k_used"] = r.max_k_used;
  return j;
}

ordered_json to_json(const Lemma4Report& r) {
  ordered_json j;
  j["count"] = r.count;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  return j;
}

ordered_json to_json(const Lemma6Report& r) {
  ordered_json j;
  j["qualifying"] = r.qualifying;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  j["s"] = r.s;
  j["max_k_used"] = r.max_k_used;
  return j;
}

ordered_json to_json(const FourierDecayReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["max_ratio"] = r.max_ratio;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json je;
    je["x"] = e.x;
    je["norm"] = e.norm;
    je["what_re"] = e.what_re;
    je["what_im"] = e.what_im;
    je["ratio"] = e.ratio;
    entries.push_back(je);
  }
  j["entries"] = entries;
  return j;
}

std::string render_json(const ordered_json& j) {
  std::string out;
  render(j, out);
  out += '\n';
  return out;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<ordered_json>& flat_reports) {
  std::string out;
  bool first = true;
  for (const auto& key : header) {
    if (!first) out += ',';
    first = false;
    out += csv_field(ordered_json(key));
  }
  out += '\n';
  for (const auto& row : flat_reports) {
    first = true;
    for (const auto& key : header) {
      if (!first) out += ',';
      first = false;
      out += csv_field(row.contains(key) ? row.at(key) : ordered_json());
    }
    out += '\n';
  }
  return out;
}

std::vector<ordered_json> csv_rows(const std::vector<CountReport>& reports) {
  std::vector<ordered_json> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(to_json(r));
  return rows;
}

}  // namespace powersieve
