// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oddpair/fp.hpp"

namespace oddpair {

// Coefficient vector over F_p in tower basis order. For F_p9 = F_p3[v],
// index j*3+i holds the coefficient of u^i v^j; deeper towers nest the
// same way, so an element's level is implied by its length.
using Elt = std::vector<Fe>;

struct FrobeniusMap {
  int power = 0;
  std::vector<int> dest;
  std::vector<Fe> coef;
  int cost = 0;  // constants different from 1
};

struct FrobeniusConstants {
  Fe alpha;                 // xi^((p-1)/3)
  Fe mu;                    // z^(p^(k/3)) = mu * z, a primitive cube root of unity
  std::optional<Fe> beta;   // xi^((p-1)/9) when p = 1 mod 9
  std::optional<Fe> gamma;  // xi^((p-1)/27) when p = 1 mod 27
  std::optional<Fe> theta;  // xi^((p-1)/5), k = 15 only
};

// Extension tower for k in {9, 15, 27}:
//   k = 9:  F_p3 = F_p[u]/(u^3 - xi),  F_p9 = F_p3[v]/(v^3 - u)
//   k = 27: ... F_p27 = F_p9[w]/(w^3 - v)
//   k = 15: F_p5 = F_p[u]/(u^5 - xi), F_p15 = F_p5[v]/(v^3 - u)
// Level 0 is F_p. The generator of level L cubed (or raised to the 5th)
// is the generator of level L-1, and the generator of level 0 is xi.
class Tower {
 public:
  Tower(std::shared_ptr<const PrimeField> field, int k, long residue);

  const PrimeField& field() const { return *field_; }
  std::shared_ptr<const PrimeField> field_ptr() const { return field_; }
  int k() const { return k_; }
  long residue() const { return xi_; }
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int level) const { return dims_.at(level); }
  int step(int level) const { return steps_.at(level); }
  int level_of(std::size_t n) const;
  bool toom_cubic(int level) const { return k_ == 15 && level == top(); }

  // Exponent n with basis element = z^n, z the top generator (z^k = xi).
  int flat_exponent(int index) const { return flat_.at(index); }
  int index_of_exponent(int n) const { return flat_inv_.at(n); }

  bool supports_frobenius(int i) const;
  std::vector<int> frobenius_indices() const;
  const FrobeniusMap& frobenius_map(int i) const;
  const FrobeniusConstants& constants() const { return consts_; }

  Elt zero(int level) const { return Elt(dims_.at(level), Fe(0)); }
  Elt one(int level) const;
  Elt random(int level, std::mt19937_64& rng) const;
  Elt embed(const Elt& a, int to_level) const;
  // Inverse of embed; fails when a is not in the subfield.
  std::optional<Elt> restrict(const Elt& a, int to_level) const;
  bool is_zero(const Elt& a) const;
  bool is_one(const Elt& a) const;
  std::string to_hex(const Elt& a) const;
  Elt from_hex(const std::string& s, int level) const;

  // Free constants used inside formulas.
  const Fe& residue_inv() const { return xi_inv_; }
  const Fe& tau() const { return tau_; }
  const std::array<std::array<mpz_class, 9>, 9>& toom9_numerators() const { return toom9_n_; }
  const mpz_class& toom9_denominator() const { return toom9_den_; }

 private:
  void build_frobenius();

  std::shared_ptr<const PrimeField> field_;
  int k_;
  long xi_;
  std::vector<int> dims_;
  std::vector<int> steps_;
  std::vector<int> flat_;
  std::vector<int> flat_inv_;
  std::vector<FrobeniusMap> frob_;
  FrobeniusConstants consts_;
  Fe xi_inv_, tau_;
  std::array<std::array<mpz_class, 9>, 9> toom9_n_{};
  mpz_class toom9_den_;
};

// Tower arithmetic charging one ledger. Multiplication and squaring use the
// algorithms whose counts reproduce the subfield cost table: 6-product
// Karatsuba for cubic steps (Toom-3 with 5 products for F_p15), 5-square
// Toom-3 for cubic squaring, 9-point Toom for the quintic step.
class TowerOps {
 public:
  TowerOps(const Tower& t, CostLedger& l) : t_(t), l_(l), F_(t.field()) {}

  const Tower& tower() const { return t_; }
  CostLedger& ledger() const { return l_; }
  const PrimeField& field() const { return F_; }

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul_small(const Elt& a, long c) const;
  Elt mul_const(const Elt& a, const Fe& c) const;
  Elt scale(const Elt& a, const Fe& c) const;  // one M1 per coefficient

  Elt mul(const Elt& a, const Elt& b) const;
  Elt sqr(const Elt& a) const;
  Elt inv(const Elt& a) const;

  // Multiply or divide by the generator of a's own level (free).
  Elt mul_by_gen(const Elt& a) const { return mul_gen(a, t_.level_of(a.size())); }
  Elt div_by_gen(const Elt& a) const { return div_gen(a, t_.level_of(a.size())); }

  Elt frobenius(const Elt& a, int i) const;
  bool cyclotomic_test(const Elt& a) const;
  Elt cyclotomic_inverse(const Elt& a) const;
  Elt cyclotomic_inverse_checked(const Elt& a) const;

  // Left-to-right binary exponentiation: (n-1) squarings, (h-1) products.
  Elt pow(const Elt& a, const mpz_class& e, bool cyclotomic = false) const;
  // Signed binary digits, most significant first. Negative digits multiply
  // by the inverse of a, computed once. `first_square` receives a^2.
  Elt pow_digits(const Elt& a, const std::vector<int>& digits, bool cyclotomic, Elt* first_square = nullptr) const;

  // Level-explicit entry points for block arithmetic.
  Elt mul_at(const Elt& a, const Elt& b, int level) const;
  Elt sqr_at(const Elt& a, int level) const;
  Elt inv_at(const Elt& a, int level) const;
  Elt mul_gen(const Elt& a, int level) const;
  Elt div_gen(const Elt& a, int level) const;

 private:
  // Products on unreduced integer coefficients; the caller reduces once.
  void raw_mul(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level, bool square) const;
  void raw_karatsuba3(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level) const;
  void raw_toom3(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level, bool square) const;
  void raw_toom9(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, bool square) const;
  void raw_gen(mpz_srcptr a, mpz_ptr out, int level) const;
  Elt reduced_product(const Elt& a, const Elt& b, int level, bool square) const;
  Elt inv_cubic(const Elt& a, int level) const;
  Elt inv_quintic(const Elt& a) const;

  const Tower& t_;
  CostLedger& l_;
  const PrimeField& F_;
};

// Helpers for block views of a level-L element as (a_0, ..., a_{d-1}).
Elt block(const Elt& a, int j, int m);
Elt join(const std::vector<Elt>& parts);

std::vector<int> binary_digits(const mpz_class& e);

}  // namespace oddpair
