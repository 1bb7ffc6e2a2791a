// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "oddpair/costs.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/io.hpp"
#include "oddpair/pairing.hpp"
#include "oddpair/params.hpp"
#include "selftest.hpp"

namespace {

using namespace oddpair;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kBadInput = 2, kParamFailure = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string preset_dir;
  std::string format = "table";
};

ParamSet load_preset(const Globals& g, const std::string& label) {
  auto ps = find_preset(label, g.preset_dir);
  if (!ps) throw BadInput("unknown preset '" + label + "'");
  return *ps;
}

json count_json(const OpCount& c) { return {{"M1", c.m}, {"S1", c.s}, {"I1", c.i}}; }

std::string bits(const mpz_class& v) { return std::to_string(mpz_sizeinbase(v.get_mpz_t(), 2)); }

// ---------------------------------------------------------------- pair

struct PairArgs {
  std::string preset, q, p;
  bool random = false;
  int count = 1;
};

int cmd_pair(const Globals& g, const PairArgs& a) {
  if (a.random == (!a.q.empty() || !a.p.empty())) throw UsageError("give either --random or both --q and --p");
  if (!a.random && (a.q.empty() || a.p.empty())) throw UsageError("--q and --p go together");
  if (a.count < 1) throw UsageError("--count must be positive");
  ParamSet ps = load_preset(g, a.preset);
  auto ctx = make_context(ps, g.seed);
  const Tower& T = *ctx->tower;
  CostLedger scratch;
  TowerOps o(T, scratch);
  CurveOps e1(ctx->E, o), e2(ctx->Et, o);
  std::mt19937_64 rng(g.seed);
  Pairing pr(*ctx);
  ImplementationModel model = implementation_model(ps);

  std::vector<std::pair<Point, Point>> inputs;
  if (a.random) {
    for (int i = 0; i < a.count; ++i) inputs.emplace_back(sample_g2(*ctx, rng), sample_g1(*ctx, rng));
  } else {
    Point Q, P;
    try {
      Q = point_from_string(T, a.q);
      P = point_from_string(T, a.p);
    } catch (const Error& e) {
      throw InvalidPoint(e.what());
    }
    if (!Q.inf && static_cast<int>(Q.x.size()) != T.dim(ctx->twist_level()))
      throw InvalidPoint("Q must lie on the twist over the degree-" + std::to_string(T.dim(ctx->twist_level())) +
                         " subfield");
    if (!P.inf && P.x.size() != 1) throw InvalidPoint("P must have coordinates in F_p");
    if (!e2.on_curve(Q)) throw InvalidPoint("Q is not on the twist");
    if (!e1.on_curve(P)) throw InvalidPoint("P is not on E");
    if (!e2.mul(ps.r, Q).inf) throw InvalidPoint("Q does not have order r");
    if (!e1.mul(ps.r, P).inf) throw InvalidPoint("P does not have order r");
    if (P.inf || Q.inf) std::cerr << "warning: identity input point, the pairing value is 1\n";
    inputs.emplace_back(Q, P);
  }

  json out = json::array();
  bool all_ok = true;
  for (const auto& [Q, P] : inputs) {
    CostLedger l(ps.label);
    Elt e = pr.optimal_ate(Q, P, l);
    json r;
    r["preset"] = ps.label;
    r["Q"] = point_to_string(T, Q);
    r["P"] = point_to_string(T, P);
    r["value"] = T.to_hex(e);
    json phases = json::object();
    for (const auto& [path, c] : l.phases())
      if (!path.empty()) phases[path] = count_json(c);
    r["ledger"] = phases;
    r["total"] = count_json(l.total());
    bool degenerate = P.inf || Q.inf;
    if (!degenerate) {
      OpCount miller = l.phase_total("miller");
      OpCount fe = l.phase_total("final_exp");
      bool match = miller == model.miller_flat && fe == model.final_exp_flat + model.projection_flat;
      r["model_match"] = match;
      all_ok = all_ok && match;
    }
    if (a.random) {
      mpz_class x = random_below(ps.r - 1, rng) + 1, y = random_below(ps.r - 1, rng) + 1;
      Elt lhs = pr.optimal_ate(e2.mul(x, Q), e1.mul(y, P));
      bool ok = lhs == o.pow(e, x * y % ps.r, true) && !T.is_one(e) && T.is_one(o.pow(e, ps.r, true));
      r["bilinear"] = ok;
      all_ok = all_ok && ok;
    }
    out.push_back(r);
  }

  if (g.format == "json") {
    std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
  } else {
    std::cout << "preset " << ps.label << ": k=" << ps.k << ", " << bits(ps.p) << "-bit p, " << to_string(ctx->twist)
              << " twist, " << to_string(ps.coords) << " Miller loop\n";
    for (const auto& r : out) {
      std::cout << "Q      " << r["Q"].get<std::string>() << "\n"
                << "P      " << r["P"].get<std::string>() << "\n"
                << "value  " << r["value"].get<std::string>() << "\nledger\n";
      for (const auto& [path, c] : r["ledger"].items()) {
        OpCount v{c["M1"], c["S1"], c["I1"]};
        std::cout << "  " << std::left << std::setw(30) << path << v.str() << "\n";
      }
      std::cout << "  " << std::left << std::setw(30) << "total" << OpCount{r["total"]["M1"], r["total"]["S1"], r["total"]["I1"]}.str()
                << "\n";
      if (r.contains("model_match"))
        std::cout << "ledger vs cost model: " << (r["model_match"].get<bool>() ? "match" : "MISMATCH") << "\n";
      if (r.contains("bilinear"))
        std::cout << "bilinearity: " << (r["bilinear"].get<bool>() ? "OK" : "FAILED") << "\n";
    }
  }
  return all_ok ? kOk : kInternal;
}

// ---------------------------------------------------------------- params

std::vector<ParamSet> read_param_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::vector<ParamSet> out;
  auto parse_one = [&](const json& j) { out.push_back(io::params_from_json(j.dump())); };
  try {
    json j = json::parse(text);
    if (j.is_array())
      for (const auto& e : j) parse_one(e);
    else
      parse_one(j);
  } catch (const json::parse_error&) {
    // JSON lines, as written by `search`
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) parse_one(json::parse(line));
  }
  if (out.empty()) throw std::invalid_argument("no parameter sets in input");
  return out;
}

void print_report_table(const ValidationReport& rep) {
  std::cout << rep.label << ": " << (rep.ok() ? "valid" : "INVALID") << "\n";
  for (const auto& c : rep.checks)
    std::cout << "  " << (c.ok ? "ok    " : "FAILED") << " " << std::left << std::setw(20) << c.name << c.detail << "\n";
}

int cmd_params(const Globals& g, const std::string& action, const std::string& preset, const std::string& file) {
  if (action == "list") {
    for (const auto& ps : builtin_presets())
      std::cout << std::left << std::setw(16) << ps.label << " k=" << std::setw(3) << ps.k << bits(ps.p) << "-bit p, "
                << bits(ps.r) << "-bit r, x = " << ps.x_form << "\n";
    return kOk;
  }
  if (action == "show" || action == "export") {
    if (preset.empty()) throw UsageError("params " + action + " needs --preset");
    ParamSet ps = load_preset(g, preset);
    if (action == "export" || g.format == "json") {
      std::cout << io::params_to_json(ps) << "\n";
      return kOk;
    }
    std::cout << "label      " << ps.label << "\nk          " << ps.k << "\nx          " << ps.x_form << " ("
              << ps.x_bits() << " bits, weight " << ps.x_weight() << ")\np          " << bits(ps.p)
              << " bits\nr          " << bits(ps.r) << " bits\nb          " << ps.b << "\nresidue    " << ps.residue
              << "\nmiller     " << to_string(ps.coords) << "\n";
    return kOk;
  }
  if (action == "validate") {
    if (preset.empty() == file.empty()) throw UsageError("params validate needs --preset or --file");
    std::vector<ParamSet> sets;
    if (!preset.empty()) {
      sets.push_back(load_preset(g, preset));
    } else {
      try {
        sets = read_param_file(file);
      } catch (const std::exception& e) {
        throw BadInput(std::string("bad parameter file: ") + e.what());
      }
    }
    bool ok = true;
    json arr = json::array();
    for (const auto& ps : sets) {
      ValidationReport rep = validate(ps);
      ok = ok && rep.ok();
      if (g.format == "json")
        arr.push_back(json::parse(io::validation_to_json(rep)));
      else
        print_report_table(rep);
    }
    if (g.format == "json") std::cout << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    return ok ? kOk : kParamFailure;
  }
  throw UsageError("unknown params action '" + action + "'");
}

// ---------------------------------------------------------------- search

int cmd_search(const Globals& g, SearchOptions opt) {
  if (opt.k != 9 && opt.k != 15 && opt.k != 27) throw UsageError("--k must be 9, 15 or 27");
  if (opt.p_bits < 8 || opt.p_bits > 4096) throw UsageError("--p-bits must be between 8 and 4096");
  if (opt.max_weight < 1 || opt.max_weight > 8) throw UsageError("--max-weight must be between 1 and 8");
  if (opt.limit < 0 || opt.max_bit_gap < 0) throw UsageError("--limit and --max-gap must not be negative");
  auto found = search_x(opt);
  for (const auto& ps : found) {
    ValidationReport rep = validate(ps);
    if (g.format == "json") {
      json j = json::parse(io::params_to_json(ps, -1));
      j["valid"] = rep.ok();
      std::cout << j.dump() << "\n";
    } else {
      std::cout << std::left << std::setw(32) << ps.x_form << " " << bits(ps.p) << "-bit p, " << bits(ps.r) << "-bit r, b = " << ps.b << ", " << (rep.ok() ? "valid" : "INVALID")
                << "\n";
    }
  }
  std::cerr << found.size() << " candidate(s)\n";
  return kOk;
}

// ---------------------------------------------------------------- costs

int cmd_costs(const Globals& g, const std::string& preset, int level) {
  if (preset.empty() == (level == 0)) throw UsageError("give exactly one of --preset and --table");
  if (!preset.empty()) {
    ParamSet ps = load_preset(g, preset);
    auto ctx = make_context(ps, g.seed);
    auto rep = measure_costs(*ctx, g.seed);
    auto recs = rep.records();
    if (g.format == "json") {
      std::cout << io::cost_records_to_json(recs) << "\n";
    } else {
      std::cout << "preset " << ps.label << "\n";
      for (const auto& r : recs) {
        std::cout << "  " << std::left << std::setw(12) << r.phase << std::setw(28) << r.measured.str()
                  << (r.analytic_match ? "matches model" : "MODEL MISMATCH") << "\n";
        for (const auto& n : r.notes) std::cout << "      " << n << "\n";
      }
    }
    return rep.model_matches() ? kOk : kInternal;
  }
  auto rows = comparison_table(level);
  struct Ratio {
    int a, b;
  };
  const Ratio ratios[] = {{863, 511}, {461, 371}};
  if (g.format == "json") {
    json j = json::parse(io::comparison_to_json(level, rows));
    j["word_ratios"] = json::array();
    for (auto [a, b] : ratios)
      j["word_ratios"].push_back({{"bits_a", a}, {"bits_b", b}, {"ratio", word_cost_ratio(a, b)}});
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << std::left << std::setw(10) << "curve" << std::setw(8) << "p bits" << std::setw(22) << "Miller loop"
            << std::setw(26) << "final exponentiation" << std::setw(18) << "total (S1=M1)" << "reference\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(10) << r.curve << std::setw(8) << r.p_bits << std::setw(22) << r.miller.str()
              << std::setw(26) << r.final_exp.str() << std::setw(18) << r.total.str() << r.reference_total.str();
    if (r.computed) std::cout << (r.total == r.reference_total ? "  (computed, equal)" : "  (computed, differs)");
    std::cout << "\n";
  }
  for (auto [a, b] : ratios)
    std::cout << "m" << a << " = " << std::fixed << std::setprecision(4) << word_cost_ratio(a, b) << " m" << b << "\n";
  return kOk;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const Globals& g, const std::vector<std::string>& only, const std::string& known_file, bool quiet) {
  selftest::Options opt;
  opt.seed = g.seed;
  opt.only = only;
  opt.preset_dir = g.preset_dir;
  std::set<std::string> known;
  if (!known_file.empty()) {
    try {
      known = selftest::read_known(known_file);
    } catch (const std::exception& e) {
      throw BadInput(e.what());
    }
  }
  auto results = selftest::run(opt, [&](const selftest::Result& r) {
    if (!quiet || !r.pass) std::cout << selftest::format(r) << std::endl;
  });
  std::map<std::string, std::pair<int, int>> per;
  for (const auto& r : results) {
    auto& c = per[r.id.substr(0, r.id.find('.'))];
    (r.pass ? c.first : c.second)++;
  }
  for (const auto& [crit, c] : per) std::cout << "# " << crit << ": " << c.first << " pass, " << c.second << " fail\n";
  if (known_file.empty()) {
    std::vector<std::string> failed;
    for (const auto& r : results)
      if (!r.pass) failed.push_back(r.id);
    if (failed.empty()) return kOk;
    std::cout << "# failing:";
    for (const auto& f : failed) std::cout << " " << f;
    std::cout << "\n";
    return kParamFailure;
  }
  auto v = selftest::compare(results, known);
  for (const auto& id : v.unexpected_fail) std::cout << "# unexpected FAIL " << id << "\n";
  for (const auto& id : v.unexpected_pass) std::cout << "# unexpected PASS " << id << " (listed as known)\n";
  std::cout << "# " << (v.ok() ? "fail set equals the known list" : "fail set differs from the known list") << "\n";
  return v.ok() ? kOk : kParamFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal ate pairings on curves with embedding degree 9, 15 and 27"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--preset-dir", g.preset_dir, "Directory of <label>.json preset overrides (env ODDPAIR_PRESET_DIR)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  app.fallthrough();

  PairArgs pa;
  auto* pair = app.add_subcommand("pair", "Compute optimal ate pairings");
  pair->add_option("--preset", pa.preset, "Preset label")->required();
  pair->add_option("--q", pa.q, "Twist point level:x_hex:y_hex or inf");
  pair->add_option("--p", pa.p, "Point on E as 1:x_hex:y_hex or inf");
  pair->add_flag("--random", pa.random, "Sample random points and check bilinearity");
  pair->add_option("--count", pa.count, "Number of random pairs")->capture_default_str();

  std::string action, pp_preset, pp_file;
  auto* params = app.add_subcommand("params", "List, show, export or validate parameter sets");
  params->add_option("action", action, "list | show | export | validate")->required();
  params->add_option("--preset", pp_preset, "Preset label");
  params->add_option("--file", pp_file, "JSON file, JSON lines, or - for stdin");

  SearchOptions so;
  so.positive_only = false;
  auto* search = app.add_subcommand("search", "Search low-weight x for a family");
  search->add_option("--k", so.k, "Embedding degree")->required();
  search->add_option("--p-bits", so.p_bits, "Bit length of p")->required();
  search->add_option("--max-weight", so.max_weight, "Maximum number of nonzero signed bits")->required();
  search->add_flag("--positive-only", so.positive_only, "Only positive bits");
  search->add_option("--limit", so.limit, "Stop after this many candidates (0 = all)");
  search->add_option("--max-gap", so.max_bit_gap, "Largest allowed distance between the top two bits (0 = any)");
  search->add_option("--threads", so.threads, "Worker threads")->capture_default_str();

  std::string c_preset;
  int c_level = 0;
  auto* costs = app.add_subcommand("costs", "Measured and analytic operation counts");
  costs->add_option("--preset", c_preset, "Preset label");
  costs->add_option("--table", c_level, "Comparison table for a security level")->check(CLI::IsMember({128, 192, 256}));

  std::vector<std::string> only;
  std::string known;
  bool quiet = false;
  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--only", only, "Run ids starting with this prefix (repeatable)");
  st->add_option("--known", known, "File of ids expected to fail; exit 0 iff the fail set equals it");
  st->add_flag("--quiet", quiet, "Print FAIL lines only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*pair) return cmd_pair(g, pa);
    if (*params) return cmd_params(g, action, pp_preset, pp_file);
    if (*search) return cmd_search(g, so);
    if (*costs) {
      if (c_preset.empty() && c_level == 0) {
        std::cerr << costs->help();
        return kUsage;
      }
      return cmd_costs(g, c_preset, c_level);
    }
    if (*st) return cmd_selftest(g, only, known, quiet);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const FieldMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParamFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
