// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "oddpair/tower.hpp"

namespace oddpair {

// One step of a hard-part program. Registers are named; "A" holds the
// input and "out" the result.
struct ChainOp {
  enum class Kind { PowX, PowXm1, Mul, Sqr, Frob, Cinv };
  Kind kind;
  std::string dst, a, b;
  int power = 0;             // Frobenius power
  std::string capture;       // PowXm1: register receiving the base squared
};

// Exponentiation program computing A^(c * Phi) with
// Phi = (p^(2k/3) + p^(k/3) + 1) / r(x) and c = scale * x^x_power.
struct ChainProgram {
  int k = 0;
  long scale = 1;
  int x_power = 0;
  std::vector<ChainOp> ops;

  struct Census {
    int pow_x = 0, pow_xm1 = 0, mul = 0, sqr = 0, cinv = 0;
    std::map<int, int> frob;  // power -> count
  };
  Census census() const;
};

// Programs shipped in core/data/chains.json.
const ChainProgram& builtin_chain(int k);
ChainProgram parse_chain(const std::string& json_text, int k);

// The integer the program raises its input to, for given x and p.
mpz_class chain_exponent(const ChainProgram& prog, const mpz_class& x, const mpz_class& p);

// Signed binary digits (most significant first) of x and x - 1 as the
// hard part uses them: x - 1 for even x keeps x's bits and puts -1 last.
std::vector<int> x_digits(const mpz_class& x);
std::vector<int> xm1_digits(const mpz_class& x);

// Runs the program on a cyclotomic element. Every op is charged to the
// ledger under the phase "<op kind>" below the caller's phase.
Elt run_chain(const ChainProgram& prog, const TowerOps& ops, const Elt& A, const mpz_class& x);

}  // namespace oddpair
