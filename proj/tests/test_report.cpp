#include <doctest.h>

#include <algorithm>

#include "powersieve/report.hpp"

using namespace powersieve;

TEST_CASE("count report key order") {
  CountReport r;
  r.B = 20;
  r.r = 2;
  r.poly = "x1^3+x2^3";
  r.exact_count = 5;
  ordered_json j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"B", "r", "poly", "exact_count",
                                         "weighted_count", "zero_count"});
}

TEST_CASE("rendering is stable and float-tagged") {
  ordered_json j;
  j["a"] = 0.5;
  j["b"] = 2.0;
  j["c"] = "x";
  std::string s1 = render_json(j);
  std::string s2 = render_json(j);
  CHECK(s1 == s2);
  CHECK(s1 == "{\"a\":0.5,\"b\":2.0,\"c\":\"x\"}\n");
}

TEST_CASE("csv shape and quoting") {
  std::vector<std::string> header{"B", "poly", "note"};
  CHECK(to_csv(header, {}) == "B,poly,note\n");

  ordered_json row;
  row["B"] = 10;
  row["poly"] = "x1^3+x2^3";
  row["note"] = "a,b \"q\"";
  std::string csv = to_csv(header, {row});
  CHECK(csv == "B,poly,note\n10,x1^3+x2^3,\"a,b \"\"q\"\"\"\n");

  // one report -> header + one row = 2 lines
  CountReport r;
  r.poly = "x1^3+x2^3";
  auto rows = csv_rows({r});
  std::vector<std::string> h;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it)
    h.push_back(it.key());
  std::string out = to_csv(h, rows);
  CHECK(std::count(out.begin(), out.end(), '\n') == 2);
}
