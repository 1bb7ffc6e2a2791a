// SPDX-License-Identifier: Apache-2.0
#include "selftest.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "oddpair/costs.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/pairing.hpp"
#include "oddpair/params.hpp"
#include "oddpair/reference.hpp"

namespace oddpair::selftest {

namespace {

constexpr int kBilinearPairs = 10;
constexpr int kFrobeniusSamples = 50;
constexpr int kCyclotomicSamples = 100;
constexpr int kHardExpSamples = 20;
constexpr int kSchoolbookPairs = 1000;

// Field representatives for the per-field criteria.
const char* const kFieldPresets[] = {"k9-paper-128", "k15-paper-192", "k27-paper-256"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string field_name(int k) { return "k" + std::to_string(k); }

// Frobenius cost claimed for each power.
std::map<int, std::uint64_t> frobenius_targets(int k) {
  switch (k) {
    case 9:
      return {{1, 8}, {2, 8}, {3, 6}, {4, 8}, {5, 8}, {6, 6}, {7, 8}, {8, 8}};
    case 15:
      return {{1, 14}, {2, 14}, {3, 14}, {4, 14}, {5, 10}, {6, 14}, {7, 14}, {8, 14}, {9, 14}, {10, 10}};
    default:
      return {{1, 26}, {2, 26}, {3, 18}, {4, 26}, {5, 26}, {6, 18}, {7, 26}, {8, 26}, {9, 18}};
  }
}

OpCount cyclotomic_inverse_cost(int k) {
  if (k == 9) return {18, 15, 0};
  if (k == 15) return {27, 27, 0};
  return {108, 75, 0};
}

struct Headline {
  const char* label;
  OpCount miller;
  std::vector<OpCount> final_exp;
};

const Headline kHeadlines[] = {
    {"k9-paper-128", {3024, 3060, 0}, {{1115, 7592, 1}}},
    {"k15-paper-192", {6819, 3311, 52}, {{3066, 24071, 1}, {3093, 24044, 1}}},
    {"k27-paper-256", {12240, 6034, 32}, {{15951, 82862, 1}}},
};

struct SecurityClaim {
  const char* label;
  double bits;
};

const SecurityClaim kSecurity[] = {{"k9-paper-128", 109}, {"k15-paper-192", 168}, {"k27-paper-256", 214}};

class Suite {
 public:
  Suite(const Options& opt, const std::function<void(const Result&)>& sink) : opt_(opt), sink_(sink) {}

  std::vector<Result> run() {
    load_presets();
    bilinearity();
    frobenius();
    cyclotomic();
    hard_part();
    headline_counts();
    tables();
    parameters();
    security();
    oracles();
    return results_;
  }

 private:
  bool wanted(const std::string& id) const {
    if (opt_.only.empty()) return true;
    for (const auto& p : opt_.only)
      if (id.compare(0, p.size(), p) == 0) return true;
    return false;
  }

  // True when any id under this prefix will run.
  bool wanted_prefix(const std::string& prefix) const {
    if (opt_.only.empty()) return true;
    for (const auto& p : opt_.only)
      if (prefix.compare(0, p.size(), p) == 0 || p.compare(0, prefix.size(), prefix) == 0) return true;
    return false;
  }

  void report(const std::string& id, bool pass, std::string detail) {
    Result r{id, pass, std::move(detail)};
    if (sink_) sink_(r);
    results_.push_back(std::move(r));
  }

  // Runs `body` unless filtered out; exceptions become a FAIL line.
  template <class F>
  void check(const std::string& id, F&& body) {
    if (!wanted(id)) return;
    std::string detail;
    bool pass = false;
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("error: ") + e.what();
    }
    report(id, pass, detail);
  }

  std::mt19937_64 rng_for(const std::string& id) const { return std::mt19937_64(opt_.seed ^ fnv1a(id)); }

  void load_presets() {
    for (const auto& builtin : builtin_presets()) {
      const std::string& label = builtin.label;
      labels_.push_back(label);
      try {
        auto ps = find_preset(label, opt_.preset_dir);
        if (!ps) throw InvalidParameters("not found");
        presets_[label] = *ps;
      } catch (const std::exception& e) {
        load_error_[label] = e.what();
        report("C0.preset." + label, false, std::string("preset file: ") + e.what());
      }
    }
  }

  const ParamSet& preset(const std::string& label) {
    auto it = presets_.find(label);
    if (it == presets_.end()) throw InvalidParameters("preset unavailable: " + load_error_[label]);
    return it->second;
  }

  const PairingContext& context(const std::string& label) {
    auto it = contexts_.find(label);
    if (it != contexts_.end()) return *it->second;
    auto ctx = make_context(preset(label), opt_.seed);
    return *(contexts_[label] = std::move(ctx));
  }

  std::shared_ptr<const Tower> tower(int k) {
    auto it = towers_.find(k);
    if (it != towers_.end()) return it->second;
    const ParamSet& ps = preset(kFieldPresets[k == 9 ? 0 : k == 15 ? 1 : 2]);
    auto t = std::make_shared<const Tower>(std::make_shared<const PrimeField>(ps.p), ps.k, ps.residue);
    return towers_[k] = t;
  }

  static Elt cyclotomic_element(const TowerOps& o, std::mt19937_64& rng) {
    const Tower& t = o.tower();
    Elt a;
    do {
      a = t.random(t.top(), rng);
    } while (t.is_zero(a));
    return o.mul(o.frobenius(a, t.k() / 3), o.inv(a));
  }

  // 1. Bilinearity and non-degeneracy.
  void bilinearity() {
    for (const auto& label : labels_) {
      std::string id = "C1.bilinearity." + label;
      check(id, [&](std::string& detail) {
        const PairingContext& ctx = context(label);
        auto rng = rng_for(id);
        Pairing pr(ctx);
        CostLedger scratch;
        TowerOps o(*ctx.tower, scratch);
        CurveOps e1(ctx.E, o), e2(ctx.Et, o);
        Point P = sample_g1(ctx, rng), Q = sample_g2(ctx, rng);
        Elt e = pr.optimal_ate(Q, P);
        if (ctx.tower->is_one(e)) {
          detail = "pairing value is 1";
          return false;
        }
        if (!ctx.tower->is_one(o.pow(e, ctx.params.r, true))) {
          detail = "pairing value is not an r-th root of unity";
          return false;
        }
        const mpz_class& r = ctx.params.r;
        for (int i = 0; i < kBilinearPairs; ++i) {
          mpz_class a = random_below(r - 1, rng) + 1, b = random_below(r - 1, rng) + 1;
          Elt lhs = pr.optimal_ate(e2.mul(a, Q), e1.mul(b, P));
          if (lhs != o.pow(e, a * b % r, true)) {
            detail = "e([a]Q, [b]P) != e(Q, P)^(ab) at pair " + std::to_string(i);
            return false;
          }
        }
        detail = std::to_string(kBilinearPairs) + " pairs, e != 1, e^r = 1";
        return true;
      });
    }
  }

  // 2. Frobenius maps against repeated p-th powers, and their ledger cost.
  void frobenius() {
    for (int k : {9, 15, 27}) {
      std::string id = "C2.equal." + field_name(k);
      check(id, [&](std::string& detail) {
        auto t = tower(k);
        CostLedger scratch;
        TowerOps o(*t, scratch);
        auto rng = rng_for(id);
        auto idx = t->frobenius_indices();
        int hi = idx.back();
        reference::PowerMap power_p(*t);
        for (int s = 0; s < kFrobeniusSamples; ++s) {
          Elt a = t->random(t->top(), rng);
          auto orbit = power_p.orbit(a, hi);
          if (s == 0 && orbit[1] != reference::int_exp(*t, a, t->field().modulus())) {
            detail = "power map disagrees with exponentiation by p";
            return false;
          }
          for (int i : idx)
            if (o.frobenius(a, i) != orbit[static_cast<std::size_t>(i)]) {
              detail = "p^" + std::to_string(i) + " differs at sample " + std::to_string(s);
              return false;
            }
        }
        detail = std::to_string(kFrobeniusSamples) + " elements, " + std::to_string(idx.size()) + " powers";
        return true;
      });
      for (auto [i, m1] : frobenius_targets(k)) {
        std::string cid = "C2.cost." + field_name(k) + ".p" + std::to_string(i);
        check(cid, [&](std::string& detail) {
          auto t = tower(k);
          auto rng = rng_for(cid);
          CostLedger l;
          TowerOps o(*t, l);
          o.frobenius(t->random(t->top(), rng), i);
          OpCount want{m1, 0, 0};
          detail = "measured " + l.total().str() + ", expected " + want.str();
          return l.total() == want;
        });
      }
    }
  }

  // 3. Cyclotomic inversion against general inversion, and its cost.
  void cyclotomic() {
    for (int k : {9, 15, 27}) {
      std::string id = "C3.equal." + field_name(k);
      check(id, [&](std::string& detail) {
        auto t = tower(k);
        CostLedger scratch;
        TowerOps o(*t, scratch);
        auto rng = rng_for(id);
        for (int s = 0; s < kCyclotomicSamples; ++s) {
          Elt A = cyclotomic_element(o, rng);
          if (o.cyclotomic_inverse(A) != o.inv(A)) {
            detail = "mismatch at sample " + std::to_string(s);
            return false;
          }
        }
        detail = std::to_string(kCyclotomicSamples) + " subgroup elements";
        return true;
      });
      std::string cid = "C3.cost." + field_name(k);
      check(cid, [&](std::string& detail) {
        auto t = tower(k);
        CostLedger scratch, l;
        auto rng = rng_for(cid);
        Elt A = cyclotomic_element(TowerOps(*t, scratch), rng);
        TowerOps(*t, l).cyclotomic_inverse(A);
        OpCount want = cyclotomic_inverse_cost(k);
        detail = "measured " + l.total().str() + ", expected " + want.str();
        return l.total() == want;
      });
    }
  }

  // 4. Hard-part identities and the chain against plain exponentiation.
  void hard_part() {
    for (const auto& label : labels_) {
      check("C4.relations." + label, [&](std::string& detail) {
        auto rel = hard_part_relations(preset(label));
        int bad = 0;
        for (const auto& r : rel)
          if (!r.ok) {
            ++bad;
            detail += (detail.empty() ? "failed: " : "; ") + r.name;
          }
        if (bad == 0) detail = std::to_string(rel.size()) + " relations hold";
        return bad == 0;
      });
      std::string id = "C4.hard_exp." + label;
      check(id, [&](std::string& detail) {
        const PairingContext& ctx = context(label);
        Pairing pr(ctx);
        CostLedger scratch;
        TowerOps o(*ctx.tower, scratch);
        auto rng = rng_for(id);
        mpz_class d = pr.hard_exponent();
        for (int s = 0; s < kHardExpSamples; ++s) {
          Elt A = cyclotomic_element(o, rng);
          if (pr.hard_exp(A, scratch) != reference::int_exp(*ctx.tower, A, d)) {
            detail = "mismatch at sample " + std::to_string(s);
            return false;
          }
        }
        detail = std::to_string(kHardExpSamples) + " elements, exponent of " +
                 std::to_string(mpz_sizeinbase(d.get_mpz_t(), 2)) + " bits";
        return true;
      });
    }
  }

  // 5. Operation counts.
  void headline_counts() {
    std::map<std::string, PresetCostReport> reports;
    auto report_for = [&](const std::string& label) -> const PresetCostReport& {
      auto it = reports.find(label);
      if (it != reports.end()) return it->second;
      return reports[label] = measure_costs(context(label), opt_.seed);
    };
    for (const auto& h : kHeadlines) {
      std::string label = h.label;
      check("C5.headline_miller." + label, [&](std::string& detail) {
        const auto& rep = report_for(label);
        detail = "measured " + rep.miller.str() + ", expected " + h.miller.str() + ", delta " +
                 OpDelta::between(h.miller, rep.miller).str();
        return rep.miller == h.miller;
      });
      check("C5.headline_final_exp." + label, [&](std::string& detail) {
        const auto& rep = report_for(label);
        detail = "measured " + rep.final_exp.str();
        for (const auto& want : h.final_exp) {
          if (rep.final_exp == want) {
            detail += ", matches " + want.str();
            return true;
          }
          detail += ", expected " + want.str() + " (delta " + OpDelta::between(want, rep.final_exp).str() + ")";
        }
        return false;
      });
    }
    for (const auto& label : labels_) {
      check("C5.model." + label, [&](std::string& detail) {
        const auto& rep = report_for(label);
        detail = "miller " + rep.miller.str() + ", final exp " + rep.final_exp.str() + ", projection " +
                 rep.projection.str();
        return rep.model_matches();
      });
      for (const char* phase : {"miller", "final_exp"}) {
        bool miller = std::string(phase) == "miller";
        check(std::string("C5.analytic_") + phase + "." + label, [&](std::string& detail) {
          const ParamSet& ps = preset(label);
          AnalyticCost a = miller ? analytic_miller(ps) : analytic_finalexp(ps);
          auto m = a.matched();
          detail = a.flat.str();
          if (m) {
            detail += ", matches the " + *m + " total";
            return true;
          }
          for (const auto& r : a.reference) detail += ", reference " + r.value.str();
          return false;
        });
        check(std::string("C5.measured_") + phase + "." + label, [&](std::string& detail) {
          const auto& rep = report_for(label);
          const AnalyticCost& a = miller ? rep.reference_miller : rep.reference_final_exp;
          const OpCount& got = miller ? rep.miller : rep.final_exp;
          if (a.reference.empty()) {
            detail = "no reference figure";
            return false;
          }
          // Itemize measured - reference: reference vs formula, Frobenius
          // accounting, other subfield costs, and what remains.
          int k = rep.params.k;
          CostTable impl = implementation_cost_table(k), frob = reference_cost_table(k);
          for (const auto& [sym, c] : impl)
            if (sym[0] == 'F') frob[sym] = c;
          OpCount with_frob = a.symbolic.flatten(frob), with_impl = a.symbolic.flatten(impl);
          const OpCount& reference = a.reference.front().value;
          detail = "measured " + got.str() + " vs reference " + reference.str();
          if (got == reference) return true;
          detail += ": reference vs formula " + OpDelta::between(reference, a.flat).str() + ", Frobenius accounting " +
                    OpDelta::between(a.flat, with_frob).str() + ", other subfield costs " +
                    OpDelta::between(with_frob, with_impl).str() + ", structural " +
                    OpDelta::between(with_impl, got).str();
          return reference == a.flat && got == with_frob;
        });
      }
    }
  }

  // 6. Comparison tables and word-cost ratios.
  void tables() {
    for (int level : {128, 192, 256}) {
      if (!wanted_prefix("C6.table" + std::to_string(level))) continue;
      std::vector<ComparisonRow> rows;
      std::string err;
      try {
        rows = comparison_table(level);
      } catch (const std::exception& e) {
        err = e.what();
      }
      if (!err.empty()) {
        report("C6.table" + std::to_string(level), false, "error: " + err);
        continue;
      }
      for (const auto& row : rows) {
        if (!row.computed) continue;
        check("C6.table" + std::to_string(level) + "." + row.preset, [&](std::string& detail) {
          detail = row.curve + " total " + row.total.str() + ", reference " + row.reference_total.str();
          return row.total == row.reference_total;
        });
      }
    }
    struct Ratio {
      int a, b;
      double want;
    };
    for (auto [a, b, want] : {Ratio{863, 511, 2.98}, Ratio{461, 371, 1.35}}) {
      check("C6.word_ratio." + std::to_string(a) + "_" + std::to_string(b), [&](std::string& detail) {
        double got = word_cost_ratio(a, b);
        std::ostringstream s;
        s.precision(4);
        s << "m" << a << "/m" << b << " = " << got << ", expected " << want << " to two decimals (truncated)";
        detail = s.str();
        return std::fabs(std::floor(got * 100 + 1e-9) / 100 - want) < 1e-9;
      });
    }
  }

  // 7. Parameter bit lengths and primality.
  void parameters() {
    for (const auto& label : labels_) {
      check("C7.params." + label, [&](std::string& detail) {
        auto rep = validate(preset(label));
        bool ok = true;
        for (const char* name : {"family", "p_prime", "r_prime", "p_bits", "r_bits", "r_divides_r_family"}) {
          const Check* c = rep.find(name);
          if (!c) continue;
          if (!detail.empty()) detail += "; ";
          detail += std::string(name) + (c->ok ? " ok" : " FAILED") + (c->detail.empty() ? "" : " " + c->detail);
          ok = ok && c->ok;
        }
        return ok;
      });
    }
  }

  // 8. Security estimate at the default constants.
  void security() {
    for (const auto& s : kSecurity) {
      check(std::string("C8.security.") + s.label, [&](std::string& detail) {
        const ParamSet& ps = preset(s.label);
        auto est = security_estimate(ps.p, ps.k, kDefaultNfsC, kDefaultNfsD);
        std::ostringstream o;
        o.precision(5);
        o << est.nfs_bits << " bits, expected " << s.bits << " +- 1";
        detail = o.str();
        return std::fabs(est.nfs_bits - s.bits) <= 1.0;
      });
    }
  }

  // 9. Fast arithmetic against the schoolbook oracle; Tate reference on toys.
  void oracles() {
    for (int k : {9, 15, 27}) {
      std::string id = "C9.schoolbook." + field_name(k);
      check(id, [&](std::string& detail) {
        auto t = tower(k);
        CostLedger scratch;
        TowerOps o(*t, scratch);
        auto rng = rng_for(id);
        for (int level = 1; level <= t->top(); ++level)
          for (int s = 0; s < kSchoolbookPairs; ++s) {
            Elt a = t->random(level, rng), b = t->random(level, rng);
            if (o.mul_at(a, b, level) != reference::schoolbook_mul(*t, a, b)) {
              detail = "level " + std::to_string(level) + " mismatch at pair " + std::to_string(s);
              return false;
            }
          }
        detail = std::to_string(kSchoolbookPairs) + " pairs on each of " + std::to_string(t->top()) + " levels";
        return true;
      });
    }
    for (const auto& toy : toy_presets()) {
      std::string id = "C9.tate." + toy.label;
      check(id, [&](std::string& detail) {
        auto ctx = make_context(toy, opt_.seed);
        auto rng = rng_for(id);
        CostLedger scratch;
        TowerOps o(*ctx->tower, scratch);
        Point P = sample_g1(*ctx, rng), Q = sample_g2(*ctx, rng);
        mpz_class b = random_below(toy.r - 1, rng) + 1;
        Elt t1 = reference::tate_reference(*ctx, P, Q);
        Elt t2 = reference::tate_reference(*ctx, CurveOps(ctx->E, o).mul(b, P), Q);
        Elt e = Pairing(*ctx).optimal_ate(Q, P);
        const Tower& T = *ctx->tower;
        bool ok = t2 == o.pow(t1, b, true) && !T.is_one(t1) && T.is_one(o.pow(t1, toy.r, true)) && !T.is_one(e) &&
                  T.is_one(o.pow(e, toy.r, true));
        detail = ok ? "bilinear, non-trivial, both values in the order-r subgroup" : "Tate reference check failed";
        return ok;
      });
    }
  }

  const Options& opt_;
  const std::function<void(const Result&)>& sink_;
  std::vector<Result> results_;
  std::vector<std::string> labels_;
  std::map<std::string, ParamSet> presets_;
  std::map<std::string, std::string> load_error_;
  std::map<std::string, std::unique_ptr<PairingContext>> contexts_;
  std::map<int, std::shared_ptr<const Tower>> towers_;
};

}  // namespace

std::vector<Result> run(const Options& opt, const std::function<void(const Result&)>& sink) {
  return Suite(opt, sink).run();
}

std::string format(const Result& r) { return std::string(r.pass ? "PASS " : "FAIL ") + r.id + "  " + r.detail; }

std::set<std::string> read_known(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.insert(line.substr(b, e - b + 1));
  }
  return out;
}

Verdict compare(const std::vector<Result>& results, const std::set<std::string>& known) {
  Verdict v;
  for (const auto& r : results) {
    bool listed = known.count(r.id) > 0;
    if (!r.pass && !listed) v.unexpected_fail.push_back(r.id);
    if (r.pass && listed) v.unexpected_pass.push_back(r.id);
  }
  return v;
}

}  // namespace oddpair::selftest
