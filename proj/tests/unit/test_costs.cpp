// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "common.hpp"
#include "oddpair/costs.hpp"
#include "oddpair/errors.hpp"

using namespace oddpair;

TEST_CASE("symbolic costs flatten with the table") {
  auto t = reference_cost_table(9);
  SymbolicCost c = SymbolicCost("M9", 2) + SymbolicCost("M1", 3);
  CHECK(c["M9"] == 2);
  CHECK(c.flatten(t) == OpCount{2 * 36 + 3, 0, 0});
  CHECK((2 * c)["M1"] == 6);
  CHECK_THROWS_AS(SymbolicCost("Q7", 1).flatten(t), InvalidParameters);
}

TEST_CASE("reference and implementation tables agree on products") {
  for (int k : {9, 15, 27}) {
    auto ref = reference_cost_table(k);
    auto impl = implementation_cost_table(k);
    std::string top = "M" + std::to_string(k), mid = "S" + std::to_string(twist_degree(k));
    CHECK(ref.at(top) == impl.at(top));
    CHECK(ref.at(mid) == impl.at(mid));
  }
}

TEST_CASE("word operations") {
  CHECK(word_operations(343) == 2 * 36 + 6);
  CHECK(word_cost_ratio(343, 343) == doctest::Approx(1.0));
  CHECK(int(word_cost_ratio(863, 511) * 100) == 298);
}

TEST_CASE("unit squaring merge") { CHECK(total_with_unit_squaring({3, 4, 1}) == OpCount{7, 0, 1}); }

TEST_CASE("analytic model for the 128-bit k=9 preset") {
  auto ps = *find_preset("k9-paper-128");
  auto fe = analytic_finalexp(ps);
  CHECK(fe.matched());
  CHECK_FALSE(analytic_miller(ps).symbolic.terms().empty());
}

TEST_CASE("comparison tables") {
  for (int level : {128, 192, 256}) {
    auto rows = comparison_table(level);
    CHECK_FALSE(rows.empty());
    bool computed = false;
    for (const auto& r : rows) computed |= r.computed;
    CHECK(computed);
  }
  CHECK_THROWS_AS(comparison_table(100), InvalidParameters);
}

TEST_CASE("measured ledger equals the implementation model on toys") {
  for (int k : {9, 15, 27}) {
    CAPTURE(k);
    auto rep = measure_costs(testutil::toy_context(k), 11);
    CHECK(rep.model_matches());
    auto recs = rep.records();
    CHECK(recs.size() >= 2);
    for (const auto& r : recs) CHECK(r.preset == testutil::toy(k).label);
  }
}
