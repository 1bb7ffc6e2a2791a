// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oddpair/errors.hpp"
#include "oddpair/fp.hpp"

using namespace oddpair;

namespace {
const mpz_class kP = mpz_class("115792089237316195423570985008687907853269984665640564039457584007908834671663") * 3;
const mpz_class kPrime("115792089237316195423570985008687907853269984665640564039457584007908834671663");
}  // namespace

TEST_CASE("primality") {
  CHECK(is_probable_prime(kPrime));
  CHECK_FALSE(is_probable_prime(kPrime + 2));
  CHECK(is_probable_prime(2));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(561));
}

TEST_CASE("hex round trip") {
  mpz_class v("123456789abcdef0123456789", 16);
  CHECK(from_hex(to_hex(v)) == v);
  CHECK(from_hex("0x1f") == 31);
}

TEST_CASE("field arithmetic charges only mul, sqr and inv") {
  PrimeField F(kPrime);
  CostLedger l;
  std::mt19937_64 rng(3);
  Fe a = F.random(rng), b = F.random(rng);
  CHECK(F.add(F.sub(a, b), b) == a);
  CHECK(F.add(a, F.neg(a)) == 0);
  CHECK(l.total() == OpCount{});
  Fe c = F.mul(a, b, l);
  CHECK(c == a * b % kPrime);
  CHECK(F.sqr(a, l) == a * a % kPrime);
  CHECK(F.mul(F.inv(a, l), a, l) == 1);
  CHECK(l.total() == OpCount{2, 1, 1});
}

TEST_CASE("inverse of zero throws") {
  PrimeField F(kPrime);
  CostLedger l;
  CHECK_THROWS_AS(F.inv(0, l), DivisionByZero);
}

TEST_CASE("pow and Fermat") {
  PrimeField F(kPrime);
  CostLedger l;
  Fe a = 12345;
  CHECK(F.pow(a, kPrime - 1, l) == 1);
  CHECK(F.pow(a, 0, l) == 1);
  CHECK(F.pow_free(a, 3) == a * a * a % kPrime);
}

TEST_CASE("square roots") {
  PrimeField F(kPrime);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    Fe a = F.random(rng);
    Fe s = a * a % kPrime;
    auto r = F.sqrt(s);
    REQUIRE(r);
    CHECK((*r * *r) % kPrime == s);
  }
  int squares = 0;
  for (long v = 1; v < 50; ++v)
    if (F.is_square(F.from_int(v))) ++squares;
  CHECK(squares > 0);
  CHECK(squares < 49);
}

TEST_CASE("cubic and fifth residues") {
  // p = 31: 31 - 1 = 30 is divisible by 3 and 5
  PrimeField F(31);
  int cubes = 0, fifths = 0;
  for (long v = 1; v < 31; ++v) {
    if (!F.is_cubic_nonresidue(F.from_int(v))) ++cubes;
    if (!F.is_fifth_nonresidue(F.from_int(v))) ++fifths;
  }
  CHECK(cubes == 10);
  CHECK(fifths == 6);
}

TEST_CASE("non-prime modulus is rejected") { CHECK_THROWS(PrimeField(kP)); }
