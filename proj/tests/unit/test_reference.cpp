// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "common.hpp"
#include "oddpair/reference.hpp"
#include "oddpair/tower.hpp"

using namespace oddpair;

TEST_CASE("schoolbook product is commutative and has unit one") {
  const auto& T = *testutil::toy_context(27).tower;
  std::mt19937_64 rng(8);
  Elt a = T.random(T.top(), rng), b = T.random(T.top(), rng);
  CHECK(reference::schoolbook_mul(T, a, b) == reference::schoolbook_mul(T, b, a));
  CHECK(reference::schoolbook_mul(T, a, T.one(T.top())) == a);
}

TEST_CASE("integer exponentiation") {
  const auto& T = *testutil::toy_context(9).tower;
  std::mt19937_64 rng(8);
  Elt a = T.random(T.top(), rng);
  CHECK(reference::int_exp(T, a, 1) == a);
  CHECK(reference::int_exp(T, a, 2) == reference::schoolbook_mul(T, a, a));
  // a^(p^9) = a
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), T.field().modulus().get_mpz_t(), 9);
  CHECK(reference::int_exp(T, a, q) == a);
}

TEST_CASE("naive Frobenius matches the orbit") {
  const auto& T = *testutil::toy_context(15).tower;
  std::mt19937_64 rng(8);
  Elt a = T.random(T.top(), rng);
  auto orbit = reference::frobenius_orbit(T, a, 2);
  REQUIRE(orbit.size() == 3);
  CHECK(orbit[0] == a);
  CHECK(reference::naive_frobenius(T, a, 1) == orbit[1]);
  CHECK(reference::naive_frobenius(T, a, 2) == orbit[2]);
}

TEST_CASE("power map equals exponentiation by p") {
  for (int k : {9, 15, 27}) {
    const auto& T = *testutil::toy_context(k).tower;
    std::mt19937_64 rng(k);
    reference::PowerMap power_p(T);
    Elt a = T.random(T.top(), rng);
    auto direct = reference::frobenius_orbit(T, a, 3);
    CHECK(power_p.orbit(a, 3) == direct);
  }
}
