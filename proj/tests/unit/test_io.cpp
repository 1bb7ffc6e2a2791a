// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include "common.hpp"
#include "oddpair/costs.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/io.hpp"

using namespace oddpair;

TEST_CASE("preset JSON round trip") {
  for (const auto& ps : builtin_presets()) {
    auto text = io::params_to_json(ps);
    auto j = nlohmann::json::parse(text);
    for (const char* f : {"k", "x_hex", "p_hex", "r_hex", "t_hex", "b", "label"}) CHECK(j.contains(f));
    ParamSet back = io::params_from_json(text);
    CHECK(back.label == ps.label);
    CHECK(back.x == ps.x);
    CHECK(back.p == ps.p);
    CHECK(back.r == ps.r);
    CHECK(back.b == ps.b);
  }
}

TEST_CASE("malformed preset JSON") {
  CHECK_THROWS_AS(io::params_from_json("{"), InvalidParameters);
  CHECK_THROWS(io::params_from_json(R"({"k": 9})"));
}

TEST_CASE("cost record fields") {
  CostRecord r{"toy-k9", "miller", {1, 2, 3}, true, {"note"}};
  auto j = nlohmann::json::parse(io::cost_records_to_json({r}));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["preset"] == "toy-k9");
  CHECK(j[0]["phase"] == "miller");
  CHECK(j[0]["M1"] == 1);
  CHECK(j[0]["S1"] == 2);
  CHECK(j[0]["I1"] == 3);
  CHECK(j[0]["analytic_match"] == true);
  CHECK(j[0]["notes"][0] == "note");
}

TEST_CASE("validation report JSON") {
  auto j = nlohmann::json::parse(io::validation_to_json(validate(testutil::toy(9))));
  CHECK(j["ok"] == true);
  CHECK(j["checks"].size() > 5);
}
