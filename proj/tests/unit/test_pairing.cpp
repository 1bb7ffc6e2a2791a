// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "common.hpp"
#include "oddpair/chain.hpp"
#include "oddpair/pairing.hpp"
#include "oddpair/reference.hpp"

using namespace oddpair;

TEST_CASE("bilinearity and non-degeneracy") {
  for (int k : {9, 15, 27}) {
    CAPTURE(k);
    const auto& ctx = testutil::toy_context(k);
    Pairing e(ctx);
    const auto& T = *ctx.tower;
    CostLedger l;
    TowerOps o(T, l);
    CurveOps c1(ctx.E, o), c2(ctx.Et, o);
    mpz_class a = 12345, b = 678;
    Elt base = e.optimal_ate(ctx.g2, ctx.g1);
    CHECK_FALSE(T.is_one(base));
    CHECK(T.is_one(o.pow(base, ctx.params.r, true)));
    Elt lhs = e.optimal_ate(c2.mul(b, ctx.g2), c1.mul(a, ctx.g1));
    CHECK(lhs == o.pow(base, a * b, true));
  }
}

TEST_CASE("identity inputs give one") {
  const auto& ctx = testutil::toy_context(9);
  Pairing e(ctx);
  CHECK(ctx.tower->is_one(e.optimal_ate(Point::infinity(), ctx.g1)));
  CHECK(ctx.tower->is_one(e.optimal_ate(ctx.g2, Point::infinity())));
}

TEST_CASE("final exponentiation equals integer exponent") {
  for (int k : {9, 15, 27}) {
    CAPTURE(k);
    const auto& ctx = testutil::toy_context(k);
    Pairing e(ctx);
    std::mt19937_64 rng(k);
    Elt f = ctx.tower->random(ctx.tower->top(), rng);
    CostLedger l;
    CHECK(e.final_exp(f, l) == reference::int_exp(*ctx.tower, f, e.final_exponent()));
  }
}

TEST_CASE("ledger phases are populated") {
  const auto& ctx = testutil::toy_context(9);
  Pairing e(ctx);
  CostLedger l;
  e.optimal_ate(ctx.g2, ctx.g1, l);
  CHECK(l.phase_total("miller").m > 0);
  CHECK(l.phase_total("final_exp").m > 0);
  CHECK(l.phase_total("miller") + l.phase_total("final_exp") == l.total());
}

TEST_CASE("optimal vector and chain relations") {
  for (const auto& ps : builtin_presets()) {
    if (ps.label == "k27-update-192") continue;
    CAPTURE(ps.label);
    CHECK(verify_optimal_vector(ps));
    for (const auto& rel : hard_part_relations(ps)) {
      CAPTURE(rel.name);
      CHECK(rel.ok);
    }
  }
}

TEST_CASE("chain exponent is a multiple of the hard target") {
  for (int k : {9, 15, 27}) {
    const auto& ctx = testutil::toy_context(k);
    Pairing e(ctx);
    const auto& prog = builtin_chain(k);
    mpz_class d = chain_exponent(prog, ctx.params.x, ctx.params.p);
    CHECK(d != 0);
    CHECK(d % e.hard_target() == 0);
    auto census = prog.census();
    CHECK(census.pow_x + census.pow_xm1 > 0);
  }
}

TEST_CASE("chain parser rejects malformed programs") {
  CHECK_THROWS(parse_chain("{", 9));
  CHECK_THROWS(parse_chain(R"({"k9": {"multiplier": {"scale": 1, "x_power": 0}, "ops": [{"op": "nonsense", "dst": "A"}]}})", 9));
}

TEST_CASE("Tate reference pairing is bilinear on toys") {
  const auto& ctx = testutil::toy_context(9);
  const auto& T = *ctx.tower;
  CostLedger l;
  TowerOps o(T, l);
  CurveOps c1(ctx.E, o);
  Elt t1 = reference::tate_reference(ctx, ctx.g1, ctx.g2);
  Elt t2 = reference::tate_reference(ctx, c1.mul(5, ctx.g1), ctx.g2);
  CHECK_FALSE(T.is_one(t1));
  CHECK(t2 == o.pow(t1, 5, true));
}
