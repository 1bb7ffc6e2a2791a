// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "common.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/reference.hpp"
#include "oddpair/tower.hpp"

using namespace oddpair;

namespace {

std::unique_ptr<Tower> toy_tower(int k) {
  const auto& ps = testutil::toy(k);
  return std::make_unique<Tower>(std::make_shared<PrimeField>(ps.p), k, ps.residue);
}

struct Expected {
  int level;
  OpCount mul, sqr, inv;
};

}  // namespace

TEST_CASE("subfield operation counts") {
  const std::vector<std::pair<int, std::vector<Expected>>> table = {
      {9, {{1, {6, 0, 0}, {0, 5, 0}, {9, 2, 1}}, {2, {36, 0, 0}, {0, 25, 0}, {0, 0, 0}}}},
      {27, {{1, {6, 0, 0}, {0, 5, 0}, {9, 2, 1}}, {2, {36, 0, 0}, {0, 25, 0}, {0, 0, 0}}, {3, {216, 0, 0}, {0, 125, 0}, {0, 0, 0}}}},
      {15, {{1, {9, 0, 0}, {0, 9, 0}, {34, 5, 1}}, {2, {45, 0, 0}, {0, 45, 0}, {0, 0, 0}}}},
  };
  for (const auto& [k, rows] : table) {
    auto t = toy_tower(k);
    std::mt19937_64 rng(k);
    for (const auto& e : rows) {
      CAPTURE(k);
      CAPTURE(e.level);
      Elt a = t->random(e.level, rng), b = t->random(e.level, rng);
      CostLedger l;
      TowerOps o(*t, l);
      o.mul_at(a, b, e.level);
      CHECK(l.total() == e.mul);
      CostLedger l2;
      TowerOps(*t, l2).sqr_at(a, e.level);
      CHECK(l2.total() == e.sqr);
      if (e.inv.i) {
        CostLedger l3;
        TowerOps(*t, l3).inv_at(a, e.level);
        CHECK(l3.total() == e.inv);
      }
    }
  }
}

TEST_CASE("fast product matches schoolbook") {
  for (int k : {9, 15, 27}) {
    auto t = toy_tower(k);
    std::mt19937_64 rng(100 + k);
    CostLedger l;
    TowerOps o(*t, l);
    for (int i = 0; i < 5; ++i) {
      Elt a = t->random(t->top(), rng), b = t->random(t->top(), rng);
      CHECK(o.mul(a, b) == reference::schoolbook_mul(*t, a, b));
      CHECK(o.sqr(a) == reference::schoolbook_mul(*t, a, a));
    }
  }
}

TEST_CASE("inverse and division by zero") {
  for (int k : {9, 15, 27}) {
    auto t = toy_tower(k);
    std::mt19937_64 rng(k);
    CostLedger l;
    TowerOps o(*t, l);
    for (int level = 1; level <= t->top(); ++level) {
      Elt a = t->random(level, rng);
      CHECK(t->is_one(o.mul_at(a, o.inv_at(a, level), level)));
    }
    CHECK_THROWS_AS(o.inv(t->zero(t->top())), DivisionByZero);
  }
}

TEST_CASE("generator multiplication and embedding") {
  auto t = toy_tower(27);
  std::mt19937_64 rng(5);
  CostLedger l;
  TowerOps o(*t, l);
  Elt a = t->random(2, rng);
  CHECK(o.div_gen(o.mul_gen(a, 2), 2) == a);
  CHECK(l.total() == OpCount{});
  Elt up = t->embed(a, t->top());
  auto down = t->restrict(up, 2);
  REQUIRE(down);
  CHECK(*down == a);
  CHECK_FALSE(t->restrict(t->random(t->top(), rng), 1));
}

TEST_CASE("frobenius agrees with exponentiation by p") {
  for (int k : {9, 15, 27}) {
    auto t = toy_tower(k);
    std::mt19937_64 rng(k);
    CostLedger l;
    TowerOps o(*t, l);
    Elt a = t->random(t->top(), rng);
    auto orbit = reference::frobenius_orbit(*t, a, 3);
    for (int i = 1; i <= 3; ++i) {
      if (!t->supports_frobenius(i)) continue;
      CAPTURE(k);
      CAPTURE(i);
      CHECK(o.frobenius(a, i) == orbit[i]);
    }
  }
}

TEST_CASE("hex round trip of tower elements") {
  auto t = toy_tower(15);
  std::mt19937_64 rng(1);
  Elt a = t->random(t->top(), rng);
  CHECK(t->from_hex(t->to_hex(a), t->top()) == a);
}

TEST_CASE("cyclotomic inverse") {
  for (int k : {9, 15, 27}) {
    auto t = toy_tower(k);
    std::mt19937_64 rng(k);
    CostLedger l;
    TowerOps o(*t, l);
    Elt a = t->random(t->top(), rng);
    // a^(q - 1) with q = p^(k/3) has norm 1 down to F_q
    Elt g = o.mul(o.frobenius(a, k / 3), o.inv(a));
    CHECK(o.cyclotomic_test(g));
    CHECK(t->is_one(o.mul(g, o.cyclotomic_inverse(g))));
    CHECK_FALSE(o.cyclotomic_test(a));
    CHECK_THROWS_AS(o.cyclotomic_inverse_checked(a), NotCyclotomic);
  }
}

TEST_CASE("pow with digits") {
  auto t = toy_tower(9);
  std::mt19937_64 rng(2);
  CostLedger l;
  TowerOps o(*t, l);
  Elt a = t->random(t->top(), rng);
  mpz_class e("123456789123456789");
  CHECK(o.pow(a, e) == reference::int_exp(*t, a, e));
  CHECK(o.pow_digits(a, binary_digits(e), false) == o.pow(a, e));
  CHECK(t->is_one(o.pow(a, 0)));
}
