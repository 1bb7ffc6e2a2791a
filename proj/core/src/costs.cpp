// SPDX-License-Identifier: Apache-2.0
#include "oddpair/costs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oddpair/chain.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/pairing.hpp"

namespace oddpair {

namespace {

constexpr OpCount M(std::uint64_t n) { return {n, 0, 0}; }
constexpr OpCount S(std::uint64_t n) { return {0, n, 0}; }
constexpr OpCount I(std::uint64_t n) { return {0, 0, n}; }

// Canonical print order: I before M before S, larger fields first, then
// cyclotomic inversions and Frobenius maps.
int symbol_rank(const std::string& s) {
  static const std::string kinds = "IMS";
  if (s == "IG") return 10000;
  if (s[0] == 'F') return 20000 + std::stoi(s.substr(1));
  auto kind = static_cast<int>(kinds.find(s[0]));
  return kind * 1000 + (100 - std::stoi(s.substr(1)));
}

OpCount minus(const OpCount& a, const OpCount& b) { return {a.m - b.m, a.s - b.s, a.i - b.i}; }

SymbolicCost sym(const std::string& s, long long n = 1) { return SymbolicCost(s, n); }

std::string field_sym(char kind, int degree) { return std::string(1, kind) + std::to_string(degree); }

CostTable base_table(int k) {
  CostTable t;
  t["M1"] = M(1);
  t["S1"] = S(1);
  t["I1"] = I(1);
  if (k == 9 || k == 27) {
    t["M3"] = M(6);
    t["S3"] = S(5);
    t["I3"] = I(1) + M(9) + S(2);
    t["M9"] = M(36);
    t["S9"] = S(25);
    t["I9"] = I(1) + M(63) + S(12);
  }
  if (k == 9) {
    t["IG"] = M(18) + S(15);
    for (int i = 1; i <= 8; ++i) t["F" + std::to_string(i)] = M(i % 3 == 0 ? 6 : 8);
  } else if (k == 27) {
    t["M27"] = M(216);
    t["S27"] = S(125);
    t["I27"] = I(1) + M(387) + S(62);
    t["IG"] = M(108) + S(75);
    for (int i : {1, 2, 3, 4, 5, 6, 7, 8, 9, 18}) t["F" + std::to_string(i)] = M(i % 3 == 0 ? 18 : 26);
  } else if (k == 15) {
    t["M5"] = M(9);
    t["S5"] = S(9);
    t["I5"] = I(1) + M(45) + S(5);
    t["M15"] = M(45);
    t["S15"] = S(45);
    t["I15"] = I(1) + M(126) + S(23);
    t["IG"] = M(27) + S(27);
    for (int i = 1; i <= 14; ++i) t["F" + std::to_string(i)] = M(i % 5 == 0 ? 10 : 14);
  } else {
    throw InvalidParameters("embedding degree must be 9, 15 or 27");
  }
  return t;
}

struct Figures {
  std::vector<ReferenceFigure> miller, final_exp;
};

// Reference totals for each shipped parameter set.
const std::map<std::string, Figures>& reference_figures() {
  static const std::map<std::string, Figures> f = {
      {"k9-paper-128", {{{"reference", M(3024) + S(3060)}}, {{"reference", I(1) + M(1115) + S(7592)}}}},
      {"k15-paper-192",
       {{{"reference", I(52) + M(6819) + S(3311)}},
        {{"reference (text)", I(1) + M(3066) + S(24071)}, {"reference (summary table)", I(1) + M(3093) + S(24044)}}}},
      {"k27-paper-256",
       {{{"reference", I(32) + M(12240) + S(6034)}}, {{"reference", I(1) + M(15951) + S(82862)}}}},
      {"k9-update-128", {{{"reference", M(4842) + S(4975)}}, {{"reference", I(1) + M(1367) + S(12317)}}}},
      {"k15-update-128", {{{"reference", M(4020) + S(3384)}}, {{"reference", I(1) + M(2940) + S(15575)}}}},
      {"k15-update-192", {{{"reference", M(8871) + S(7839)}}, {{"reference", I(1) + M(3201) + S(35816)}}}},
      {"k27-update-192",
       {{{"reference", I(29) + M(11052) + S(4798)}}, {{"reference", I(1) + M(19191) + S(59587)}}}},
      {"k27-update-256",
       {{{"reference", I(55) + M(21348) + S(9660)}}, {{"reference", I(1) + M(19191) + S(122337)}}}},
  };
  return f;
}

std::string delta_note(const std::string& what, const OpCount& target, const OpCount& got) {
  OpDelta d = OpDelta::between(target, got);
  if (d.zero()) return what + " " + target.str() + ": equal";
  return what + " " + target.str() + ": differs by " + d.str();
}

}  // namespace

SymbolicCost& SymbolicCost::add(const std::string& s, long long n) {
  if (n == 0) return *this;
  long long& v = terms_[s];
  v += n;
  if (v == 0) terms_.erase(s);
  return *this;
}

long long SymbolicCost::operator[](const std::string& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0 : it->second;
}

SymbolicCost& SymbolicCost::operator+=(const SymbolicCost& o) {
  for (const auto& [s, n] : o.terms_) add(s, n);
  return *this;
}

SymbolicCost operator*(long long k, const SymbolicCost& a) {
  SymbolicCost r;
  for (const auto& [s, n] : a.terms_) r.add(s, k * n);
  return r;
}

OpCount SymbolicCost::flatten(const CostTable& t) const {
  std::int64_t m = 0, s = 0, i = 0;
  for (const auto& [sy, n] : terms_) {
    auto it = t.find(sy);
    if (it == t.end()) throw InvalidParameters("no cost known for " + sy);
    m += n * static_cast<std::int64_t>(it->second.m);
    s += n * static_cast<std::int64_t>(it->second.s);
    i += n * static_cast<std::int64_t>(it->second.i);
  }
  if (m < 0 || s < 0 || i < 0) throw InvalidParameters("negative flattened cost");
  return {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(i)};
}

std::string SymbolicCost::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::string, long long>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return symbol_rank(a.first) < symbol_rank(b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, n] : v) {
    if (!first || n < 0) os << (n < 0 ? "-" : "+");
    first = false;
    long long a = std::llabs(n);
    if (s[0] == 'F') {
      os << (a == 1 ? "" : std::to_string(a) + "*") << "p^" << s.substr(1) << "-Frobenius";
    } else {
      if (a != 1 || s == "M1" || s == "S1" || s == "I1") os << a;
      os << s;
    }
  }
  std::string out = os.str();
  return out[0] == '+' ? out.substr(1) : out;
}

CostTable reference_cost_table(int k) { return base_table(k); }

CostTable implementation_cost_table(int k) {
  CostTable t = base_table(k);
  if (k == 15) {
    t["I5"] = I(1) + M(34) + S(5);
    t["I15"] = I(1) + M(115) + S(23);
    for (int i : {3, 6, 9, 12}) t["F" + std::to_string(i)] = M(12);
  } else if (k == 27) {
    t["F3"] = M(24);
    t["F6"] = M(24);
  }
  return t;
}

int twist_degree(int k) {
  switch (k) {
    case 9: return 3;
    case 15: return 5;
    case 27: return 9;
    default: throw InvalidParameters("embedding degree must be 9, 15 or 27");
  }
}

std::optional<std::string> AnalyticCost::matched() const {
  for (const auto& r : reference)
    if (r.value == flat) return r.name;
  for (const auto& v : variants)
    for (const auto& r : reference)
      if (r.value == v.value) return r.name + " via " + v.name;
  return std::nullopt;
}

AnalyticCost analytic_miller(int k, int n, int h, CostModel model) {
  if (n < 2 || h < 1) throw InvalidParameters("x must have at least two bits");
  const long long dbl = n - 1, add = h - 1, lines = dbl + add;
  AnalyticCost a;
  SymbolicCost& c = a.symbolic;
  if (k == 9) {
    c += dbl * (sym("M1", 9) + sym("M3", 3) + sym("S3", 9));
    c += add * (sym("M1", 9) + sym("M3", 12) + sym("S3", 5));
    c += sym("S9", n - 2) + sym("M9", lines - 1);
  } else if (k == 15 && model == CostModel::Original) {
    c += lines * (sym("M1", 15) + sym("M5", 3) + sym("S5", 2) + sym("I5"));
    c += sym("S15", n - 2) + sym("M15", lines - 1);
    a.notes.push_back("affine steps; addition priced as doubling");
  } else if (k == 15) {
    c += add * (sym("M1", 15) + sym("M5", 13) + sym("S5", 3));
    c += dbl * (sym("M1", 15) + sym("M5", 6) + sym("S5", 7));
    c += sym("S15", n - 2) + sym("M15", lines - 1);
  } else if (k == 27) {
    c += lines * (sym("M9", 3) + sym("S9", 2) + sym("I9") + sym("M1", 9));
    if (model == CostModel::Original) {
      c += sym("S9", 6 * (n - 3)) + sym("M9", 6 * (lines - 2));
      a.notes.push_back("top-field operations priced as 6S9 and 6M9");
    } else {
      c += sym("S27", n - 2) + sym("M27", lines - 2);
    }
  } else {
    throw InvalidParameters("embedding degree must be 9, 15 or 27");
  }
  a.flat = c.flatten(reference_cost_table(k));
  return a;
}

AnalyticCost analytic_finalexp(int k, int n, int h, bool x_odd, CostModel model) {
  if (n < 2 || h < 1) throw InvalidParameters("x must have at least two bits");
  AnalyticCost a;
  SymbolicCost& c = a.symbolic;
  const int top = k;
  std::string Mt = field_sym('M', top), St = field_sym('S', top);
  long long sq_unit = 1;
  if (k == 27 && model == CostModel::Original) {
    Mt = "M9";
    St = "S9";
    sq_unit = 6;
    a.notes.push_back("top-field operations priced as 6S9 and 6M9");
  }
  SymbolicCost pow_x = sym(St, sq_unit * (n - 1)) + sym(Mt, sq_unit * (h - 1));
  SymbolicCost pow_xm1 = sym(St, sq_unit * (n - 1)) + sym(Mt, sq_unit * (x_odd ? h - 2 : h));
  c += sym(field_sym('I', top));
  if (k == 9) {
    c += sym("M9") + sym("F3");
    c += 2 * pow_xm1 + 5 * pow_x + sym("M9", 7) + sym("S9", 1);
    c += sym("IG", x_odd ? 2 : 4);
    for (int i = 1; i <= 5; ++i) c += sym("F" + std::to_string(i));
  } else if (k == 15) {
    c += sym("M15") + sym("F5");
    c += 2 * pow_xm1 + 9 * pow_x + sym("M15", 20) + sym("S15", 1);
    c += sym("IG", x_odd ? 4 : 6);
    for (int i = 1; i <= 9; ++i) c += sym("F" + std::to_string(i));
  } else if (k == 27) {
    c += 17 * pow_x + 2 * pow_xm1 + sym(Mt, 11 * sq_unit) + sym("IG", 2);
    for (int i = 1; i <= 8; ++i) c += sym("F" + std::to_string(i));
    c += sym("F9", 2);
  } else {
    throw InvalidParameters("embedding degree must be 9, 15 or 27");
  }
  CostTable t = reference_cost_table(k);
  a.flat = c.flatten(t);
  if (k == 15) {
    t["IG"] = S(54);
    a.variants.push_back({"cyclotomic inverse as 54S1", c.flatten(t)});
  }
  return a;
}

AnalyticCost analytic_miller(const ParamSet& ps) {
  AnalyticCost a = analytic_miller(ps.k, ps.x_bits(), ps.x_weight(), ps.cost_model);
  auto it = reference_figures().find(ps.label);
  if (it != reference_figures().end()) a.reference = it->second.miller;
  return a;
}

AnalyticCost analytic_finalexp(const ParamSet& ps) {
  AnalyticCost a = analytic_finalexp(ps.k, ps.x_bits(), ps.x_weight(), ps.x % 2 != 0, ps.cost_model);
  auto it = reference_figures().find(ps.label);
  if (it != reference_figures().end()) a.reference = it->second.final_exp;
  return a;
}

ImplementationModel implementation_model(const ParamSet& ps) {
  const int k = ps.k, m = twist_degree(k);
  const std::string Mm = field_sym('M', m), Sm = field_sym('S', m), Im = field_sym('I', m);
  const std::string Mt = field_sym('M', k), St = field_sym('S', k), It = field_sym('I', k);
  const long long n = ps.x_bits(), h = ps.x_weight();
  const long long dbl = n - 1, add = h - 1, lines = dbl + add;
  ImplementationModel im;

  SymbolicCost& ml = im.miller;
  if (ps.coords == MillerCoords::Affine) {
    // inverse of x_P and its square, then x_Q^2 for the first tangent
    ml += sym("I1") + sym("S1") + sym(Sm);
    ml += lines * (sym(Im) + sym(Mm, 3) + sym(Sm, 2) + sym("M1", 3 * m) + sym(Mm, 3));
  } else {
    ml += sym("S1");
    ml += dbl * (sym(Mm, 3) + sym(Sm, 9) + sym("M1", 4 * m));
    ml += add * (sym(Mm, 12) + sym(Sm, 4) + sym("M1", 4 * m));
    ml += lines * sym(Mm, 5);
  }
  ml += sym(St, n - 2) + sym(Mt, lines - 1);

  const ChainProgram& prog = builtin_chain(k);
  auto cen = prog.census();
  const bool odd = ps.x % 2 != 0;
  SymbolicCost& fe = im.final_exp;
  fe += sym(It) + sym(Mt);
  fe += cen.pow_x * (sym(St, n - 1) + sym(Mt, h - 1));
  fe += cen.pow_xm1 * (sym(St, n - 1) + sym(Mt, odd ? h - 2 : h) + sym("IG", odd ? 0 : 1));
  fe += sym(Mt, cen.mul) + sym(St, cen.sqr) + sym("IG", cen.cinv);
  im.frobenius += sym("F" + std::to_string(k / 3));
  for (const auto& [i, cnt] : cen.frob) im.frobenius += sym("F" + std::to_string(i), cnt);
  fe += im.frobenius;

  if (ps.r_family != ps.r) {
    mpz_class c = ps.r_family / ps.r;
    long long bits = static_cast<long long>(mpz_sizeinbase(c.get_mpz_t(), 2));
    long long weight = static_cast<long long>(mpz_popcount(c.get_mpz_t()));
    im.projection = sym(St, bits - 1) + sym(Mt, weight - 1);
  }

  CostTable t = implementation_cost_table(k);
  im.miller_flat = im.miller.flatten(t);
  im.final_exp_flat = im.final_exp.flatten(t);
  im.frobenius_flat = im.frobenius.flatten(t);
  im.projection_flat = im.projection.flatten(t);
  return im;
}

OpCount total_with_unit_squaring(const OpCount& c) { return {c.m + c.s, 0, c.i}; }

long word_operations(int bits) {
  long n = (1L + bits + 63) / 64;
  return 2 * n * n + n;
}

double word_cost_ratio(int bits_a, int bits_b) {
  return static_cast<double>(word_operations(bits_a)) / static_cast<double>(word_operations(bits_b));
}

std::vector<ComparisonRow> comparison_table(int level) {
  auto computed = [](const std::string& curve, const std::string& label, OpCount reference) {
    auto ps = find_preset(label);
    if (!ps) throw InternalBreach("missing preset " + label);
    ComparisonRow r;
    r.curve = curve;
    r.preset = label;
    r.miller = analytic_miller(*ps).flat;
    r.final_exp = analytic_finalexp(*ps).flat;
    r.p_bits = ps->claimed_p_bits;
    r.total = total_with_unit_squaring(r.miller + r.final_exp);
    r.reference_total = reference;
    r.computed = true;
    return r;
  };
  auto fixed = [](const std::string& curve, OpCount miller, OpCount fe, int bits, OpCount total) {
    ComparisonRow r;
    r.curve = curve;
    r.miller = miller;
    r.final_exp = fe;
    r.p_bits = bits;
    r.total = total;
    r.reference_total = total;
    return r;
  };
  switch (level) {
    case 128:
      return {computed("k=15", "k15-update-128", I(1) + M(25919)),
              fixed("KSS16", M(7534), I(1) + M(18542), 340, I(1) + M(26076)),
              fixed("BLS12", M(7708), I(1) + M(8295), 461, I(1) + M(16003)),
              fixed("BN12", M(12068), I(1) + M(7485), 461, I(1) + M(19553)),
              computed("k=9", "k9-update-128", I(1) + M(23501))};
    case 192:
      return {computed("k=15", "k15-update-192", I(1) + M(55727)),
              computed("BLS27", "k27-update-192", I(30) + M(94628)),
              fixed("KSS18", M(15270) + S(2590), I(8) + M(7977) + S(18310), 677, I(8) + M(44147)),
              fixed("BLS24", M(15495), I(10) + M(27914), 554, I(10) + M(43409))};
    case 256:
      return {computed("k=27", "k27-update-256", I(56) + M(172536)),
              fixed("BLS24", M(18812), I(10) + M(43142), 1029, I(10) + M(61954)),
              fixed("KSS18", M(32238) + S(2620), I(8) + M(7977) + S(39520), 1495, I(8) + M(82355)),
              fixed("BLS48", M(34778), I(19) + M(110212), 575, I(19) + M(144990)),
              fixed("Aur54", M(39976) + S(5200), I(27) + M(256147) + S(12074), 569, I(27) + M(313397))};
    default:
      throw InvalidParameters("security level must be 128, 192 or 256");
  }
}

bool PresetCostReport::model_matches() const {
  return miller == model.miller_flat && final_exp == model.final_exp_flat && frobenius == model.frobenius_flat &&
         projection == model.projection_flat;
}

std::vector<CostRecord> PresetCostReport::records() const {
  std::vector<CostRecord> out;
  CostRecord ml{params.label, "miller", miller, miller == model.miller_flat, {}};
  ml.notes.push_back("implementation model " + model.miller.str() + " = " + model.miller_flat.str());
  ml.notes.push_back("reference formula " + reference_miller.symbolic.str() + " = " + reference_miller.flat.str());
  for (const auto& r : reference_miller.reference) ml.notes.push_back(delta_note("measured vs " + r.name, r.value, miller));
  for (const auto& n : reference_miller.notes) ml.notes.push_back(n);
  out.push_back(std::move(ml));

  CostRecord fe{params.label, "final_exp", final_exp, final_exp == model.final_exp_flat, {}};
  fe.notes.push_back("implementation model " + model.final_exp.str() + " = " + model.final_exp_flat.str());
  fe.notes.push_back("frobenius maps " + model.frobenius.str() + " = " + frobenius.str() + " (included)");
  fe.notes.push_back("reference formula " + reference_final_exp.symbolic.str() + " = " + reference_final_exp.flat.str());
  for (const auto& v : reference_final_exp.variants) fe.notes.push_back("variant " + v.name + " = " + v.value.str());
  for (const auto& r : reference_final_exp.reference)
    fe.notes.push_back(delta_note("measured vs " + r.name, r.value, final_exp));
  if (auto m = reference_final_exp.matched()) fe.notes.push_back("reference formula matches the " + *m + " total");
  for (const auto& n : reference_final_exp.notes) fe.notes.push_back(n);
  if (!model.projection.terms().empty())
    fe.notes.push_back("excludes projection onto the order-r subgroup, " + projection.str());
  out.push_back(std::move(fe));

  if (!model.projection.terms().empty()) {
    CostRecord pr{params.label, "final_exp/projection", projection, projection == model.projection_flat, {}};
    pr.notes.push_back("power r(x)/r = " + to_hex(params.r_family / params.r) + " (hex), " + model.projection.str());
    out.push_back(std::move(pr));
  }
  return out;
}

PresetCostReport measure_costs(const PairingContext& ctx, std::uint64_t seed) {
  PresetCostReport rep;
  rep.params = ctx.params;
  CostLedger scratch;
  TowerOps o(*ctx.tower, scratch);
  std::mt19937_64 rng(seed);
  std::optional<Point> P;
  for (int i = 0; i < 20 && (!P || P->x[0] == 0); ++i) P = CurveOps(ctx.E, o).random_point(rng);
  auto Q = CurveOps(ctx.Et, o).random_point(rng);
  if (!P || !Q) throw InvalidParameters(ctx.params.label + ": could not sample curve points");

  Pairing pairing(ctx);
  CostLedger l(ctx.params.label);
  Elt f = pairing.miller_loop(*Q, *P, l);
  pairing.final_exp(f, l);

  rep.phases = l.phases();
  rep.miller = l.phase_total("miller");
  rep.projection = l.phase_total("final_exp/projection");
  rep.final_exp = minus(l.phase_total("final_exp"), rep.projection);
  rep.frobenius = l.phase_total("final_exp/easy/frobenius") + l.phase_total("final_exp/hard/frobenius");
  rep.model = implementation_model(ctx.params);
  rep.reference_miller = analytic_miller(ctx.params);
  rep.reference_final_exp = analytic_finalexp(ctx.params);
  return rep;
}

}  // namespace oddpair
