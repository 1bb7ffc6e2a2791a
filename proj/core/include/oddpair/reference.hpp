// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "oddpair/curve.hpp"
#include "oddpair/tower.hpp"

// Slow, independent oracles for tests. Nothing here touches a cost ledger
// or calls the tower's multiplication, Frobenius or inversion code.
namespace oddpair::reference {

// Polynomial product in the level generator g (g^dim = residue), by plain
// convolution and reduction. Throws FieldMismatch on different levels.
Elt schoolbook_mul(const Tower& t, const Elt& a, const Elt& b);

// a^e by square-and-multiply over schoolbook_mul; a negative e inverts
// through Fermat's little theorem. Throws DivisionByZero for 0^e, e < 0.
Elt int_exp(const Tower& t, const Elt& a, const mpz_class& e);

// a^(p^i) by exponentiation.
Elt naive_frobenius(const Tower& t, const Elt& a, int i);
// a^(p^i) for i = 0..max_i by repeated p-th powers.
std::vector<Elt> frobenius_orbit(const Tower& t, const Elt& a, int max_i);

// The p-th power map as a matrix over F_p: column j is e_j^p computed by
// int_exp. Applying it costs dim^2 products instead of an exponentiation.
class PowerMap {
 public:
  explicit PowerMap(const Tower& t);
  Elt operator()(const Elt& a) const;
  std::vector<Elt> orbit(const Elt& a, int max_i) const;

 private:
  const Tower& t_;
  std::vector<Elt> cols_;
};

// Reduced Tate pairing f_{r,P}(psi(Q'))^((p^k - 1)/r) with lines and
// verticals both evaluated. Meant for small parameter sets.
Elt tate_reference(const PairingContext& ctx, const Point& P, const Point& Qt);

}  // namespace oddpair::reference
