// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oddpair/curve.hpp"
#include "oddpair/ledger.hpp"
#include "oddpair/params.hpp"

namespace oddpair {

// Flattened value of each operation symbol. Symbols are M<n>, S<n>, I<n>
// for the field of degree n, IG for inversion in the cyclotomic subgroup
// and F<i> for the p^i-Frobenius of the top field.
using CostTable = std::map<std::string, OpCount>;

// Integer combination of operation symbols, e.g. 45M9+165M3+414M1.
class SymbolicCost {
 public:
  SymbolicCost() = default;
  SymbolicCost(const std::string& sym, long long n) { add(sym, n); }

  SymbolicCost& add(const std::string& sym, long long n);
  long long operator[](const std::string& sym) const;
  const std::map<std::string, long long>& terms() const { return terms_; }

  SymbolicCost& operator+=(const SymbolicCost& o);
  friend SymbolicCost operator+(SymbolicCost a, const SymbolicCost& b) { return a += b; }
  friend SymbolicCost operator*(long long k, const SymbolicCost& a);
  friend bool operator==(const SymbolicCost&, const SymbolicCost&) = default;

  // Throws InvalidParameters on a symbol missing from the table.
  OpCount flatten(const CostTable& t) const;
  std::string str() const;

 private:
  std::map<std::string, long long> terms_;
};

// Reference subfield costs (used by every analytic total) and the costs
// this library's arithmetic achieves.
CostTable reference_cost_table(int k);
CostTable implementation_cost_table(int k);

// Symbol suffix of the twist field and of the top field: 3/9, 5/15, 9/27.
int twist_degree(int k);

struct ReferenceFigure {
  std::string name;
  OpCount value;
};

// A reference cost formula evaluated for one x, flattened with the
// reference table. `reference` lists the reference totals for the preset;
// `variants` holds alternative flattenings.
struct AnalyticCost {
  SymbolicCost symbolic;
  OpCount flat;
  std::vector<ReferenceFigure> reference;
  std::vector<ReferenceFigure> variants;
  std::vector<std::string> notes;

  // Name of the first reference figure equal to `flat` or a variant.
  std::optional<std::string> matched() const;
};

AnalyticCost analytic_miller(int k, int x_bits, int x_weight, CostModel model);
AnalyticCost analytic_finalexp(int k, int x_bits, int x_weight, bool x_odd, CostModel model);
AnalyticCost analytic_miller(const ParamSet& ps);
AnalyticCost analytic_finalexp(const ParamSet& ps);

// Exact prediction of what the ledger records for this library's Miller
// loop and final exponentiation.
struct ImplementationModel {
  SymbolicCost miller, final_exp, frobenius, projection;
  OpCount miller_flat, final_exp_flat, frobenius_flat, projection_flat;
};
ImplementationModel implementation_model(const ParamSet& ps);

// Merges squarings into multiplications; inversions stay separate.
OpCount total_with_unit_squaring(const OpCount& c);

// Ratio of (2n^2 + n) word operations with n = ceil((1 + bits) / 64).
double word_cost_ratio(int bits_a, int bits_b);
long word_operations(int bits);

struct ComparisonRow {
  std::string curve;
  std::string preset;  // empty for reference rows
  OpCount miller, final_exp;
  int p_bits = 0;
  OpCount total;        // S1 = M1
  OpCount reference_total;
  bool computed = false;
};

// Rows for the 128, 192 or 256-bit level: this library's presets, with
// totals from the analytic model, next to fixed reference rows for other
// families. Throws InvalidParameters on another level.
std::vector<ComparisonRow> comparison_table(int level);

struct CostRecord {
  std::string preset, phase;
  OpCount measured;
  bool analytic_match = false;
  std::vector<std::string> notes;
};

// Measured ledger of one pairing on random points, compared against the
// implementation model and the reference figures.
struct PresetCostReport {
  ParamSet params;
  std::map<std::string, OpCount> phases;
  OpCount miller, final_exp, projection, frobenius;
  ImplementationModel model;
  AnalyticCost reference_miller, reference_final_exp;

  bool model_matches() const;
  std::vector<CostRecord> records() const;
};

PresetCostReport measure_costs(const PairingContext& ctx, std::uint64_t seed = 1);

}  // namespace oddpair
