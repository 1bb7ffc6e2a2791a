// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "oddpair/chain.hpp"
#include "oddpair/curve.hpp"

namespace oddpair {

// Optimal ate pairing e(Q, P) = f_{x,Q}(P)^((p^k - 1) / r) for the
// families with h(z) = x - z.
//
// Ledger phases: miller/{setup,double,add,line,accumulate},
// final_exp/easy/{frobenius,inverse,mul}, final_exp/hard/<op>, and
// final_exp/projection when r(x) has a cofactor.
class Pairing {
 public:
  explicit Pairing(const PairingContext& ctx);

  const PairingContext& context() const { return ctx_; }
  const ChainProgram& chain() const { return chain_; }

  // f_{x,Q}(P) times the vertical conjugates that make it well defined
  // modulo F_{p^(k/3)}^*. Identity inputs give 1.
  Elt miller_loop(const Point& Qt, const Point& P, CostLedger& l) const;
  Elt easy_exp(const Elt& f, CostLedger& l) const;
  Elt hard_exp(const Elt& A, CostLedger& l) const;
  // Raises to r(x)/r; identity when r(x) is prime.
  Elt project(const Elt& a, CostLedger& l) const;
  Elt final_exp(const Elt& f, CostLedger& l) const;
  Elt optimal_ate(const Point& Qt, const Point& P, CostLedger& l) const;
  Elt optimal_ate(const Point& Qt, const Point& P) const;

  // Integer exponents: d = Phi / r(x), d' = chain exponent, and the full
  // final exponent (p^k - 1) / r(x) * (hard multiplier).
  mpz_class hard_target() const;
  mpz_class hard_exponent() const;
  mpz_class final_exponent() const;

 private:
  Elt miller_affine(const Point& Qt, const Point& P, CostLedger& l) const;
  Elt miller_projective(const Point& Qt, const Point& P, CostLedger& l) const;

  const PairingContext& ctx_;
  const ChainProgram& chain_;
};

// The optimal vector (x, -1): x = p mod r, plus the non-degeneracy
// condition m k p^k != ((p^k - 1)/r) sum i c_i p^(i-1) mod r with
// c_0 = x, c_1 = -1 and m = (x - p) / r.
bool verify_optimal_vector(const ParamSet& ps);

struct Relation {
  std::string name;
  bool ok = false;
};

// The k_i relations for k = 9 and 15 and the chain identity for
// every k, evaluated as integers at the preset's x.
std::vector<Relation> hard_part_relations(const ParamSet& ps);

}  // namespace oddpair
