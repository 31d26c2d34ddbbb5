#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "powersieve/charsum.hpp"
#include "powersieve/counting.hpp"
#include "powersieve/geometry.hpp"
#include "powersieve/sieve.hpp"
#include "powersieve/weight.hpp"

namespace powersieve {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const CountReport& r);
ordered_json to_json(const SigmaReport& r);
ordered_json to_json(const SieveInequalityReport& r);
ordered_json to_json(const SumReport& r);
ordered_json to_json(const VdcDecomposition& r);
ordered_json to_json(const MultiplicativityReport& r);
ordered_json to_json(const PoissonReport& r);
ordered_json to_json(const Prop1Report& r);
ordered_json to_json(const SingularLocusReport& r);
ordered_json to_json(const Lemma3Report& r);
ordered_json to_json(const Lemma4Report& r);
ordered_json to_json(const Lemma6Report& r);
ordered_json to_json(const FourierDecayReport& r);

// Renders a JSON value with fixed key order and stable float formatting so
// identical inputs yield byte-identical text.
std::string render_json(const ordered_json& j);

// RFC-4180-style CSV: header + one row per report, LF line endings, fields
// quoted when they contain commas, quotes, or newlines. An empty list emits
// the header only. Rows must be flat objects with the given keys.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<ordered_json>& flat_reports);
std::vector<ordered_json> csv_rows(const std::vector<CountReport>& reports);

}  // namespace powersieve
