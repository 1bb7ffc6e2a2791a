// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <random>
#include <string>

#include "oddpair/ledger.hpp"

namespace oddpair {

using Fe = mpz_class;

bool is_probable_prime(const mpz_class& n, int rounds = 64);
mpz_class random_below(const mpz_class& bound, std::mt19937_64& rng);
std::string to_hex(const mpz_class& v);
mpz_class from_hex(const std::string& s);

// Prime field F_p. Elements are canonical residues held in mpz_class.
// mul/sqr/inv/pow charge the ledger passed in; add/sub/neg and the
// small-constant helpers are free.
class PrimeField {
 public:
  explicit PrimeField(mpz_class p);

  const mpz_class& modulus() const { return p_; }
  std::size_t bits() const { return bits_; }
  unsigned mod3() const { return mod3_; }
  unsigned mod5() const { return mod5_; }

  Fe reduce(const mpz_class& v) const;
  Fe from_int(long v) const { return reduce(mpz_class(v)); }

  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;

  Fe mul(const Fe& a, const Fe& b, CostLedger& l) const;
  Fe sqr(const Fe& a, CostLedger& l) const;
  Fe inv(const Fe& a, CostLedger& l) const;
  Fe pow(const Fe& a, const mpz_class& e, CostLedger& l) const;

  // Uncounted: small integer factors and precomputed constants.
  Fe mul_small(const Fe& a, long c) const;
  Fe mul_const(const Fe& a, const Fe& c) const;
  Fe pow_free(const Fe& a, const mpz_class& e) const;
  Fe inv_free(const Fe& a) const;

  bool is_cubic_nonresidue(const Fe& a) const;
  bool is_fifth_nonresidue(const Fe& a) const;
  bool is_square(const Fe& a) const;
  std::optional<Fe> sqrt(const Fe& a) const;

  Fe random(std::mt19937_64& rng) const { return random_below(p_, rng); }
  std::string to_hex(const Fe& a) const;  // fixed width, big-endian

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  mpz_class p_;
  std::size_t bits_;
  unsigned mod3_;
  unsigned mod5_;
};

}  // namespace oddpair
