// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace oddpair {

enum class MillerCoords { Affine, Projective };

std::string to_string(MillerCoords c);
MillerCoords coords_from_string(const std::string& s);

// Which reference step formulas and subfield conventions the analytic
// cost model applies to a parameter set.
enum class CostModel { Original, Update };

std::string to_string(CostModel m);
CostModel cost_model_from_string(const std::string& s);

// One instantiation of a curve family. For k = 27 the family value r(x)
// is composite and `r` holds its large prime factor; `r_family` keeps r(x).
struct ParamSet {
  std::string label;
  int k = 0;
  mpz_class x, p, r, r_family, t;
  long b = 1;
  long residue = 7;
  MillerCoords coords = MillerCoords::Affine;
  CostModel cost_model = CostModel::Update;
  std::string x_form;  // e.g. "2^43+2^37+2^7+1"
  int claimed_p_bits = 0;
  int claimed_r_bits = 0;

  int x_bits() const;
  int x_weight() const;
};

struct FamilyValue {
  mpz_class p, r, t;
};

// Exact evaluation of the family polynomials; throws NotIntegral when x is
// in the wrong residue class.
FamilyValue evaluate_family(int k, const mpz_class& x);

// The eight parameter sets shipped with the library.
const std::vector<ParamSet>& builtin_presets();
// Small instances of each family, for fast tests.
const std::vector<ParamSet>& toy_presets();
// <label>.json in `dir` (or $ODDPAIR_PRESET_DIR) wins over the builtin and
// toy presets of the same name. Throws InvalidParameters on a malformed file.
std::optional<ParamSet> find_preset(const std::string& label, const std::string& dir = {});

// Parses a power-of-two sum such as "2^29+2^19+2^17+2^14" or "2^25-2^3+1".
mpz_class parse_x_form(const std::string& s);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  std::string label;
  std::vector<Check> checks;
  bool ok() const;
  const Check* find(const std::string& name) const;
};

ValidationReport validate(const ParamSet& ps);

// Smallest tower residue (7 preferred) valid for the field, or nullopt.
std::optional<long> default_residue(int k, const mpz_class& p);

struct SearchOptions {
  int k = 9;
  int p_bits = 0;
  int max_weight = 4;
  bool positive_only = true;
  int limit = 0;          // 0 = no limit
  int max_bit_gap = 0;    // 0 = full range
  unsigned threads = 1;
};

// Low Hamming weight x whose family values pass primality and residue
// checks and give p of exactly `p_bits` bits, sorted by (weight, x).
std::vector<ParamSet> search_x(const SearchOptions& opt);

struct SecurityEstimate {
  double log2_q = 0;
  double nfs_bits = 0;       // S(Q, c, d)
  double rho_bound = 0;      // log Q / k / (2 rho)
  bool rho_ok = false;       // rho bound >= level
};

// S(Q,c,d) = c lg(e) (ln Q)^(1/3) (ln ln Q)^(2/3) - d with Q = p^k.
double nfs_cost_bits(double log2_q, double c, double d);
SecurityEstimate security_estimate(const mpz_class& p, int k, double c, double d, int level = 0, double rho = 0);
// Default method constants (non-normative; fitted to the reference levels).
inline constexpr double kDefaultNfsC = 1.5262856567;  // (32/9)^(1/3)
inline constexpr double kDefaultNfsD = 1.0;

}  // namespace oddpair
