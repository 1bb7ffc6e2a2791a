// SPDX-License-Identifier: Apache-2.0
#include "oddpair/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <mutex>
#include <sstream>

#include "embedded_data.hpp"
#include "oddpair/curve.hpp"
#include "oddpair/errors.hpp"
#include "oddpair/pairing.hpp"
#include "preset_json.hpp"

namespace oddpair {

namespace {

mpz_class pw(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

int bits_of(const mpz_class& v) {
  if (v == 0) return 0;
  return static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

mpz_class exact_div(const mpz_class& a, long d) {
  if (a % d != 0) throw NotIntegral("x gives a non-integral family value");
  return a / d;
}

// Strips prime factors below `bound`; returns the remaining cofactor.
mpz_class strip_small_factors(mpz_class n, unsigned long bound) {
  for (unsigned long q = 2; q < bound; ++q) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= q;
  }
  return n;
}

struct PresetTables {
  std::vector<ParamSet> presets, toys;
};

const PresetTables& tables() {
  static const PresetTables t = [] {
    PresetTables out;
    auto j = nlohmann::json::parse(detail::kPresetsJson);
    for (const auto& e : j.at("presets")) out.presets.push_back(detail::preset_from_json(e));
    for (const auto& e : j.at("toys")) out.toys.push_back(detail::preset_from_json(e));
    return out;
  }();
  return t;
}

}  // namespace

std::string to_string(MillerCoords c) { return c == MillerCoords::Affine ? "affine" : "projective"; }

MillerCoords coords_from_string(const std::string& s) {
  if (s == "affine") return MillerCoords::Affine;
  if (s == "projective") return MillerCoords::Projective;
  throw InvalidParameters("unknown Miller coordinates '" + s + "'");
}

std::string to_string(CostModel m) { return m == CostModel::Original ? "original" : "update"; }

CostModel cost_model_from_string(const std::string& s) {
  if (s == "original") return CostModel::Original;
  if (s == "update") return CostModel::Update;
  throw InvalidParameters("unknown cost model '" + s + "'");
}

int ParamSet::x_bits() const { return bits_of(abs(x)); }

int ParamSet::x_weight() const {
  mpz_class a = abs(x);
  return static_cast<int>(mpz_popcount(a.get_mpz_t()));
}

FamilyValue evaluate_family(int k, const mpz_class& x) {
  FamilyValue v;
  v.t = x + 1;
  const mpz_class x2 = x * x, x3 = x2 * x;
  switch (k) {
    case 9: {
      mpz_class q = (x - 1) * (x - 1) * (2 * x3 + 1) * (2 * x3 + 1);
      v.p = exact_div(3 * (x + 1) * (x + 1) + q, 12);
      v.r = exact_div(x3 * x3 + x3 + 1, 3);
      break;
    }
    case 15:
      v.p = exact_div(pw(x, 12) - 2 * pw(x, 11) + pw(x, 10) + pw(x, 7) - 2 * pw(x, 6) + pw(x, 5) + x2 + x + 1, 3);
      v.r = pw(x, 8) - pw(x, 7) + pw(x, 5) - pw(x, 4) + x3 - x + 1;
      break;
    case 27:
      v.r = exact_div(pw(x, 18) + pw(x, 9) + 1, 3);
      v.p = (x - 1) * (x - 1) * v.r + x;
      break;
    default:
      throw InvalidParameters("embedding degree must be 9, 15 or 27");
  }
  return v;
}

const std::vector<ParamSet>& builtin_presets() { return tables().presets; }
const std::vector<ParamSet>& toy_presets() { return tables().toys; }

std::optional<ParamSet> find_preset(const std::string& label, const std::string& dir) {
  std::string d = dir;
  if (d.empty()) {
    if (const char* env = std::getenv("ODDPAIR_PRESET_DIR")) d = env;
  }
  if (!d.empty()) {
    std::filesystem::path f = std::filesystem::path(d) / (label + ".json");
    if (std::filesystem::exists(f)) {
      std::ifstream in(f);
      std::stringstream ss;
      ss << in.rdbuf();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(ss.str());
      } catch (const nlohmann::json::exception& e) {
        throw InvalidParameters(f.string() + ": " + e.what());
      }
      return detail::preset_from_json(j);
    }
  }
  for (const auto* list : {&builtin_presets(), &toy_presets()})
    for (const auto& ps : *list)
      if (ps.label == label) return ps;
  return std::nullopt;
}

mpz_class parse_x_form(const std::string& s) {
  mpz_class total = 0;
  std::size_t i = 0;
  int sign = 1;
  bool expect_term = true;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  auto number = [&]() -> unsigned long {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw InvalidParameters("bad x form '" + s + "'");
    return std::stoul(s.substr(start, i - start));
  };
  skip();
  while (i < s.size()) {
    if (expect_term) {
      unsigned long base = number();
      skip();
      mpz_class term = base;
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        term = pw(mpz_class(base), number());
      }
      total += sign * term;
      expect_term = false;
    } else {
      if (s[i] == '+') sign = 1;
      else if (s[i] == '-') sign = -1;
      else throw InvalidParameters("bad x form '" + s + "'");
      ++i;
      expect_term = true;
    }
    skip();
  }
  if (expect_term) throw InvalidParameters("bad x form '" + s + "'");
  return total;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::optional<long> default_residue(int k, const mpz_class& p) {
  if (p % 3 != 1 || (k == 15 && p % 5 != 1)) return std::nullopt;
  PrimeField F(p);
  auto good = [&](long xi) {
    Fe a = F.from_int(xi);
    if (a == 0 || !F.is_cubic_nonresidue(a)) return false;
    return k != 15 || F.is_fifth_nonresidue(a);
  };
  if (good(7)) return 7;
  for (long xi = 2; xi < 1000; ++xi)
    if (good(xi)) return xi;
  return std::nullopt;
}

ValidationReport validate(const ParamSet& ps) {
  ValidationReport rep;
  rep.label = ps.label;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  if (!ps.x_form.empty()) {
    bool ok = false;
    try {
      ok = parse_x_form(ps.x_form) == ps.x;
    } catch (const Error&) {
    }
    add("x_form", ok, ps.x_form);
  }
  try {
    FamilyValue fv = evaluate_family(ps.k, ps.x);
    bool ok = fv.p == ps.p && fv.t == ps.t && fv.r == ps.r_family;
    add("family", ok, ok ? "p, r, t match the family polynomials" : "p, r or t differ from the family values");
  } catch (const Error& e) {
    add("family", false, e.what());
  }
  bool p_prime = is_probable_prime(ps.p);
  bool r_prime = is_probable_prime(ps.r);
  add("p_prime", p_prime);
  add("r_prime", r_prime);
  add("r_divides_r_family", ps.r > 0 && ps.r_family % ps.r == 0);
  int pb = bits_of(ps.p), rb = bits_of(ps.r);
  if (ps.claimed_p_bits > 0)
    add("p_bits", pb == ps.claimed_p_bits, std::to_string(pb) + " (claimed " + std::to_string(ps.claimed_p_bits) + ")");
  if (ps.claimed_r_bits > 0)
    add("r_bits", rb == ps.claimed_r_bits, std::to_string(rb) + " (claimed " + std::to_string(ps.claimed_r_bits) + ")");
  bool congruent = ps.p % 3 == 1 && (ps.k != 15 || ps.p % 5 == 1);
  add("p_congruence", congruent, ps.k == 15 ? "p = 1 mod 15" : "p = 1 mod 3");

  bool residue_ok = false;
  if (congruent && p_prime) {
    PrimeField F(ps.p);
    Fe a = F.from_int(ps.residue);
    residue_ok = a != 0 && F.is_cubic_nonresidue(a) && (ps.k != 15 || F.is_fifth_nonresidue(a));
  }
  add("tower_residue", residue_ok, std::to_string(ps.residue) + (ps.residue == 7 ? "" : " (7 is not usable)"));

  mpz_class n1 = ps.p + 1 - ps.t;
  add("r_divides_order", ps.r > 0 && n1 % ps.r == 0);

  bool emb = false;
  if (ps.r > 1) {
    mpz_class pr = ps.p % ps.r, acc = 1;
    int first = 0;
    for (int i = 1; i <= ps.k && first == 0; ++i) {
      acc = acc * pr % ps.r;
      if (acc == 1) first = i;
    }
    emb = first == ps.k;
  }
  add("embedding_degree", emb);
  add("optimal_vector", verify_optimal_vector(ps));

  if (p_prime && r_prime && residue_ok) {
    try {
      auto ctx = make_context(ps);
      add("curve_and_twist", true, "b = " + std::to_string(ps.b) + ", " + to_string(ctx->twist) + " twist");
    } catch (const Error& e) {
      add("curve_and_twist", false, e.what());
    }
  } else {
    add("curve_and_twist", false, "skipped: field or group order invalid");
  }
  return rep;
}

std::vector<ParamSet> search_x(const SearchOptions& opt) {
  if (opt.k != 9 && opt.k != 15 && opt.k != 27) throw InvalidParameters("embedding degree must be 9, 15 or 27");
  if (opt.p_bits < 8 || opt.max_weight < 1 || opt.max_weight > 8)
    throw InvalidParameters("search bounds out of range");

  // Top bit positions whose family p can reach the requested size.
  std::vector<int> tops;
  // Bit length of p at the first integral x in base, base + dir, ...
  auto p_bits_near = [&](const mpz_class& base, int dir) -> std::optional<int> {
    for (int i = 0; i < 64; ++i) {
      try {
        return bits_of(evaluate_family(opt.k, base + dir * i).p);
      } catch (const NotIntegral&) {
      }
    }
    return std::nullopt;
  };
  for (int e = 2; e < 400; ++e) {
    auto lo_bits = p_bits_near(pw(2, e), 1);
    if (!lo_bits) continue;
    int lo = *lo_bits;
    int hi = p_bits_near(pw(2, e + 1) - 1, -1).value_or(lo + 24);
    if (lo - 2 > opt.p_bits) break;
    if (opt.p_bits >= lo - 2 && opt.p_bits <= hi + 1) tops.push_back(e);
  }

  auto accept = [&](const mpz_class& x) -> std::optional<ParamSet> {
    FamilyValue fv;
    try {
      fv = evaluate_family(opt.k, x);
    } catch (const NotIntegral&) {
      return std::nullopt;
    }
    if (bits_of(fv.p) != opt.p_bits) return std::nullopt;
    if (fv.p % 3 != 1 || (opt.k == 15 && fv.p % 5 != 1)) return std::nullopt;
    mpz_class r = opt.k == 27 ? strip_small_factors(fv.r, 1 << 16) : fv.r;
    if (mpz_probab_prime_p(r.get_mpz_t(), 2) == 0) return std::nullopt;
    if (mpz_probab_prime_p(fv.p.get_mpz_t(), 2) == 0) return std::nullopt;
    if (!is_probable_prime(r) || !is_probable_prime(fv.p)) return std::nullopt;
    auto res = default_residue(opt.k, fv.p);
    if (!res) return std::nullopt;
    ParamSet ps;
    ps.k = opt.k;
    ps.x = x;
    ps.p = fv.p;
    ps.r = r;
    ps.r_family = fv.r;
    ps.t = fv.t;
    ps.residue = *res;
    ps.coords = opt.k == 9 ? MillerCoords::Projective : MillerCoords::Affine;
    ps.claimed_p_bits = bits_of(fv.p);
    ps.claimed_r_bits = bits_of(r);
    ps.label = "k" + std::to_string(opt.k) + "-x" + to_hex(x);

    // Curve coefficient: first b in 1, -1, 2, -2, ... with p + 1 - t points.
    auto field = std::make_shared<const PrimeField>(fv.p);
    Tower T(field, opt.k, *res);
    CostLedger scratch;
    TowerOps o(T, scratch);
    std::mt19937_64 rng(x.get_ui());
    for (long b : {1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, -7L}) {
      Curve E{&T, 0, Elt{field->from_int(b)}};
      if (annihilates(CurveOps(E, o), fv.p + 1 - fv.t, rng, 3)) {
        ps.b = b;
        return ps;
      }
    }
    return std::nullopt;
  };

  struct Found {
    int terms;
    ParamSet ps;
  };
  // "+2^q", "-2^q", "+1", "-1"
  auto term = [](int sign, int q) {
    return std::string(sign > 0 ? "+" : "-") + (q == 0 ? std::string("1") : "2^" + std::to_string(q));
  };
  std::vector<Found> found;
  std::mutex mu;
  for (int e : tops) {
    int lowest = opt.max_bit_gap > 0 ? std::max(0, e - opt.max_bit_gap) : 0;
    // Each worker owns the second-highest term position j (or none).
    std::vector<int> seconds;
    seconds.push_back(-1);
    if (opt.max_weight > 1)
      for (int j = e - 1; j >= lowest; --j) seconds.push_back(j);

    auto work = [&](int j) {
      std::vector<Found> local;
      std::vector<int> signs = opt.positive_only ? std::vector<int>{1} : std::vector<int>{1, -1};
      auto keep = [&](const mpz_class& x, const std::string& form, int terms) {
        if (auto ps = accept(x)) {
          ps->x_form = form;
          local.push_back({terms, std::move(*ps)});
        }
      };
      // Depth-first over strictly decreasing positions below `below`.
      std::function<void(mpz_class, int, int, std::string, int)> rec = [&](mpz_class x, int below, int left,
                                                                             std::string form, int terms) {
        if (x > 0) keep(x, form, terms);
        if (left == 0) return;
        for (int q = below - 1; q >= lowest; --q)
          for (int s : signs) rec(x + s * pw(2, q), q, left - 1, form + term(s, q), terms + 1);
      };
      mpz_class top = pw(2, e);
      std::string head = "2^" + std::to_string(e);
      if (j < 0) {
        keep(top, head, 1);
      } else {
        for (int s : signs) rec(top + s * pw(2, j), j, opt.max_weight - 2, head + term(s, j), 2);
      }
      std::lock_guard<std::mutex> g(mu);
      found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    };

    unsigned threads = std::max(1u, opt.threads);
    for (std::size_t i = 0; i < seconds.size(); i += threads) {
      std::vector<std::future<void>> jobs;
      for (std::size_t t = i; t < std::min(seconds.size(), i + threads); ++t)
        jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, work, seconds[t]));
      for (auto& f : jobs) f.get();
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    if (a.terms != b.terms) return a.terms < b.terms;
    return a.ps.x < b.ps.x;
  });
  std::vector<ParamSet> out;
  for (auto& f : found)
    if (out.empty() || out.back().x != f.ps.x) out.push_back(std::move(f.ps));
  if (opt.limit > 0 && out.size() > static_cast<std::size_t>(opt.limit)) out.resize(opt.limit);
  return out;
}

double nfs_cost_bits(double log2_q, double c, double d) {
  if (log2_q <= 0) return -d;
  double ln_q = log2_q * std::log(2.0);
  return c * std::log2(std::exp(1.0)) * std::cbrt(ln_q) * std::pow(std::log(ln_q), 2.0 / 3.0) - d;
}

SecurityEstimate security_estimate(const mpz_class& p, int k, double c, double d, int level, double rho) {
  SecurityEstimate s;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, p.get_mpz_t());
  s.log2_q = k * (std::log2(mant) + static_cast<double>(exp));
  s.nfs_bits = nfs_cost_bits(s.log2_q, c, d);
  if (rho > 0) {
    s.rho_bound = s.log2_q / k / (2 * rho);
    s.rho_ok = s.rho_bound >= level;
  } else {
    s.rho_ok = level <= 0;
  }
  return s;
}

namespace detail {

ParamSet preset_from_json(const nlohmann::json& j) {
  try {
    ParamSet ps;
    ps.label = j.at("label").get<std::string>();
    ps.k = j.at("k").get<int>();
    ps.x = from_hex(j.at("x_hex").get<std::string>());
    ps.p = from_hex(j.at("p_hex").get<std::string>());
    ps.r = from_hex(j.at("r_hex").get<std::string>());
    ps.t = from_hex(j.at("t_hex").get<std::string>());
    ps.b = j.at("b").get<long>();
    if (j.contains("residue")) {
      ps.residue = j.at("residue").get<long>();
    } else {
      ps.residue = default_residue(ps.k, ps.p).value_or(7);
    }
    ps.coords = j.contains("miller") ? coords_from_string(j.at("miller").get<std::string>())
                                     : (ps.k == 9 ? MillerCoords::Projective : MillerCoords::Affine);
    if (j.contains("cost_model")) ps.cost_model = cost_model_from_string(j.at("cost_model").get<std::string>());
    ps.x_form = j.value("x_form", std::string{});
    ps.claimed_p_bits = j.value("claimed_p_bits", 0);
    ps.claimed_r_bits = j.value("claimed_r_bits", 0);
    ps.r_family = ps.r;
    try {
      FamilyValue fv = evaluate_family(ps.k, ps.x);
      if (ps.r != 0 && fv.r % ps.r == 0) ps.r_family = fv.r;
    } catch (const Error&) {
    }
    return ps;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters(std::string("malformed preset: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidParameters(std::string("malformed preset: ") + e.what());
  }
}

nlohmann::json preset_to_json(const ParamSet& ps) {
  auto hex = [](const mpz_class& v) { return v < 0 ? "-0x" + to_hex(mpz_class(-v)) : "0x" + to_hex(v); };
  nlohmann::json j;
  j["label"] = ps.label;
  j["k"] = ps.k;
  j["x_hex"] = hex(ps.x);
  j["p_hex"] = hex(ps.p);
  j["r_hex"] = hex(ps.r);
  j["t_hex"] = hex(ps.t);
  j["b"] = ps.b;
  j["residue"] = ps.residue;
  j["miller"] = to_string(ps.coords);
  j["cost_model"] = to_string(ps.cost_model);
  if (!ps.x_form.empty()) j["x_form"] = ps.x_form;
  if (ps.claimed_p_bits) j["claimed_p_bits"] = ps.claimed_p_bits;
  if (ps.claimed_r_bits) j["claimed_r_bits"] = ps.claimed_r_bits;
  return j;
}

}  // namespace detail

}  // namespace oddpair
