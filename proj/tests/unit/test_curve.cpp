// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "common.hpp"
#include "oddpair/errors.hpp"

using namespace oddpair;

TEST_CASE("group law on E and the twist") {
  for (int k : {9, 15, 27}) {
    const auto& ctx = testutil::toy_context(k);
    std::mt19937_64 rng(k);
    CostLedger l;
    TowerOps o(*ctx.tower, l);
    for (const Curve* c : {&ctx.E, &ctx.Et}) {
      CurveOps co(*c, o);
      auto P = co.random_point(rng);
      auto Q = co.random_point(rng);
      REQUIRE(P);
      REQUIRE(Q);
      CHECK(co.on_curve(*P));
      CHECK(co.add(*P, *Q) == co.add(*Q, *P));
      CHECK(co.add(*P, *P) == co.dbl(*P));
      CHECK(co.add(*P, co.neg(*P)).inf);
      CHECK(co.add(*P, Point::infinity()) == *P);
      mpz_class n("987654321987654321");
      CHECK(co.mul(n, *P) == co.mul_affine(n, *P));
      CHECK(co.mul(-n, *P) == co.neg(co.mul(n, *P)));
      CHECK(co.mul(0, *P).inf);
    }
  }
}

TEST_CASE("generators have order r") {
  for (int k : {9, 15, 27}) {
    const auto& ctx = testutil::toy_context(k);
    CostLedger l;
    TowerOps o(*ctx.tower, l);
    CurveOps e(ctx.E, o), et(ctx.Et, o);
    CHECK_FALSE(ctx.g1.inf);
    CHECK_FALSE(ctx.g2.inf);
    CHECK(e.mul(ctx.params.r, ctx.g1).inf);
    CHECK(et.mul(ctx.params.r, ctx.g2).inf);
    std::mt19937_64 rng(3);
    CHECK(e.on_curve(sample_g1(ctx, rng)));
    CHECK(et.on_curve(sample_g2(ctx, rng)));
  }
}

TEST_CASE("untwisted points lie on E over the top field") {
  for (int k : {9, 15, 27}) {
    const auto& ctx = testutil::toy_context(k);
    CostLedger l;
    TowerOps o(*ctx.tower, l);
    CurveOps ek(ctx.Ek, o);
    Point Q = untwist(ctx, ctx.g2);
    CHECK(ek.on_curve(Q));
    CHECK(ek.on_curve(embed_g1(ctx, ctx.g1)));
    // Q is in the p-eigenspace of the Frobenius
    CHECK(frobenius_point(ctx, Q) == ek.mul(ctx.params.p, Q));
  }
}

TEST_CASE("twist order candidates") {
  const auto& ps = testutil::toy(9);
  auto c = twist_order_candidates(ps.p, ps.t, 3);
  CHECK(c.size() >= 2);
  int divisible = 0;
  for (const auto& n : c)
    if (n % ps.r == 0) ++divisible;
  CHECK(divisible >= 1);
}

TEST_CASE("square roots in extensions") {
  const auto& ctx = testutil::toy_context(15);
  std::mt19937_64 rng(4);
  CostLedger l;
  TowerOps o(*ctx.tower, l);
  int level = ctx.twist_level();
  Elt a = ctx.tower->random(level, rng);
  Elt s = o.sqr_at(a, level);
  auto r = sqrt_ext(o, s);
  REQUIRE(r);
  CHECK(o.sqr_at(*r, level) == s);
  CHECK(is_square_ext(o, s));
}

TEST_CASE("point serialization") {
  const auto& ctx = testutil::toy_context(27);
  std::string s = point_to_string(*ctx.tower, ctx.g2);
  CHECK(point_from_string(*ctx.tower, s) == ctx.g2);
  CHECK(point_from_string(*ctx.tower, point_to_string(*ctx.tower, Point::infinity())).inf);
  CHECK_THROWS(point_from_string(*ctx.tower, "not a point"));
}
