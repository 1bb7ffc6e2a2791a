// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oddpair/errors.hpp"

using namespace oddpair;

TEST_CASE("x forms") {
  CHECK(parse_x_form("2^43+2^37+2^7+1") == mpz_class("0x82000000081"));
  CHECK(parse_x_form("2^3-1") == 7);
  CHECK_THROWS(parse_x_form("2^^3"));
}

TEST_CASE("preset lookup") {
  CHECK(builtin_presets().size() == 8);
  CHECK(toy_presets().size() == 3);
  auto ps = find_preset("k9-paper-128");
  REQUIRE(ps);
  CHECK(ps->k == 9);
  CHECK(ps->x_bits() == 44);
  CHECK(ps->x_weight() == 4);
  CHECK_FALSE(find_preset("no-such-preset"));
}

TEST_CASE("family evaluation reproduces stored values") {
  for (const auto& ps : builtin_presets()) {
    CAPTURE(ps.label);
    auto fv = evaluate_family(ps.k, ps.x);
    CHECK(fv.p == ps.p);
    CHECK(fv.t == ps.t);
    CHECK(fv.r % ps.r == 0);
  }
}

TEST_CASE("validation of toys") {
  for (const auto& ps : toy_presets()) {
    CAPTURE(ps.label);
    auto rep = validate(ps);
    for (const auto& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.ok);
    }
  }
}

TEST_CASE("stored 192-bit k=27 parameters do not validate") {
  auto ps = find_preset("k27-update-192");
  REQUIRE(ps);
  auto rep = validate(*ps);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.find("p_prime"));
  CHECK_FALSE(rep.find("p_prime")->ok);
}

TEST_CASE("tampered parameters are rejected") {
  ParamSet ps = testutil::toy(9);
  ps.p += 2;
  auto rep = validate(ps);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.find("family")->ok);
}

TEST_CASE("default residue") {
  const auto& ps = testutil::toy(9);
  auto r = default_residue(9, ps.p);
  REQUIRE(r);
  CHECK(*r == ps.residue);
}

TEST_CASE("search finds the 128-bit k=9 x") {
  SearchOptions opt;
  opt.k = 9;
  opt.p_bits = 343;
  opt.max_weight = 4;
  opt.limit = 50;
  auto found = search_x(opt);
  bool hit = false;
  for (const auto& ps : found) {
    CHECK(ps.p.get_str(2).size() == 343);
    if (ps.x == mpz_class("0x82000000081")) hit = true;
  }
  CHECK(hit);
}

TEST_CASE("search rejects bad bounds") {
  SearchOptions opt;
  opt.k = 10;
  opt.p_bits = 343;
  CHECK_THROWS(search_x(opt));
}

TEST_CASE("security estimates") {
  auto ps = *find_preset("k9-paper-128");
  auto s = security_estimate(ps.p, 9, kDefaultNfsC, kDefaultNfsD, 128, 4.0 / 3.0);
  CHECK(std::abs(s.log2_q - 9 * 343) < 9);
  CHECK(s.nfs_bits > 100);
  CHECK(nfs_cost_bits(3000, kDefaultNfsC, 1.0) < nfs_cost_bits(4000, kDefaultNfsC, 1.0));
}
