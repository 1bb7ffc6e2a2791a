// SPDX-License-Identifier: Apache-2.0
#include "oddpair/chain.hpp"

#include <json.hpp>
#include <memory>
#include <mutex>

#include "embedded_data.hpp"
#include "oddpair/errors.hpp"

namespace oddpair {

namespace {

ChainOp::Kind kind_of(const std::string& s) {
  using K = ChainOp::Kind;
  if (s == "pow_x") return K::PowX;
  if (s == "pow_xm1") return K::PowXm1;
  if (s == "mul") return K::Mul;
  if (s == "sqr") return K::Sqr;
  if (s == "frob") return K::Frob;
  if (s == "cinv") return K::Cinv;
  throw Error("unknown chain op '" + s + "'");
}

}  // namespace

ChainProgram::Census ChainProgram::census() const {
  Census c;
  for (const auto& o : ops) {
    switch (o.kind) {
      case ChainOp::Kind::PowX: ++c.pow_x; break;
      case ChainOp::Kind::PowXm1: ++c.pow_xm1; break;
      case ChainOp::Kind::Mul: ++c.mul; break;
      case ChainOp::Kind::Sqr: ++c.sqr; break;
      case ChainOp::Kind::Cinv: ++c.cinv; break;
      case ChainOp::Kind::Frob: ++c.frob[o.power]; break;
    }
  }
  return c;
}

ChainProgram parse_chain(const std::string& json_text, int k) {
  auto doc = nlohmann::json::parse(json_text);
  const auto& j = doc.at("k" + std::to_string(k));
  ChainProgram prog;
  prog.k = k;
  prog.scale = j.at("multiplier").at("scale").get<long>();
  prog.x_power = j.at("multiplier").at("x_power").get<int>();
  for (const auto& o : j.at("ops")) {
    ChainOp op{kind_of(o.at("op").get<std::string>()), o.at("dst").get<std::string>(), {}, {}, 0, {}};
    if (o.contains("src")) op.a = o["src"].get<std::string>();
    if (o.contains("a")) op.a = o["a"].get<std::string>();
    if (o.contains("b")) op.b = o["b"].get<std::string>();
    if (o.contains("power")) op.power = o["power"].get<int>();
    if (o.contains("capture_square")) op.capture = o["capture_square"].get<std::string>();
    prog.ops.push_back(std::move(op));
  }
  return prog;
}

const ChainProgram& builtin_chain(int k) {
  static std::once_flag once;
  static std::map<int, ChainProgram> progs;
  std::call_once(once, [] {
    for (int kk : {9, 15, 27}) progs[kk] = parse_chain(detail::kChainsJson, kk);
  });
  auto it = progs.find(k);
  if (it == progs.end()) throw InvalidParameters("no hard-part program for k=" + std::to_string(k));
  return it->second;
}

mpz_class chain_exponent(const ChainProgram& prog, const mpz_class& x, const mpz_class& p) {
  std::map<std::string, mpz_class> reg{{"A", 1}};
  auto get = [&](const std::string& n) -> const mpz_class& {
    auto it = reg.find(n);
    if (it == reg.end()) throw Error("chain reads undefined register '" + n + "'");
    return it->second;
  };
  for (const auto& o : prog.ops) {
    switch (o.kind) {
      case ChainOp::Kind::PowX: reg[o.dst] = get(o.a) * x; break;
      case ChainOp::Kind::PowXm1:
        if (!o.capture.empty()) reg[o.capture] = 2 * get(o.a);
        reg[o.dst] = get(o.a) * (x - 1);
        break;
      case ChainOp::Kind::Mul: reg[o.dst] = get(o.a) + get(o.b); break;
      case ChainOp::Kind::Sqr: reg[o.dst] = 2 * get(o.a); break;
      case ChainOp::Kind::Cinv: reg[o.dst] = -get(o.a); break;
      case ChainOp::Kind::Frob: {
        mpz_class pi;
        mpz_pow_ui(pi.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(o.power));
        reg[o.dst] = get(o.a) * pi;
        break;
      }
    }
  }
  return get("out");
}

std::vector<int> x_digits(const mpz_class& x) {
  if (x <= 1) throw InvalidParameters("loop parameter x must exceed 1");
  return binary_digits(x);
}

std::vector<int> xm1_digits(const mpz_class& x) {
  if (x <= 2) throw InvalidParameters("loop parameter x must exceed 2");
  if (mpz_odd_p(x.get_mpz_t())) return binary_digits(x - 1);
  auto d = binary_digits(x);
  d.back() = -1;
  return d;
}

Elt run_chain(const ChainProgram& prog, const TowerOps& ops, const Elt& A, const mpz_class& x) {
  const auto dx = x_digits(x), dxm1 = xm1_digits(x);
  CostLedger& l = ops.ledger();
  std::map<std::string, Elt> reg{{"A", A}};
  auto get = [&](const std::string& n) -> const Elt& {
    auto it = reg.find(n);
    if (it == reg.end()) throw Error("chain reads undefined register '" + n + "'");
    return it->second;
  };
  for (const auto& o : prog.ops) {
    switch (o.kind) {
      case ChainOp::Kind::PowX: {
        CostLedger::Phase ph(l, "pow_x");
        reg[o.dst] = ops.pow_digits(get(o.a), dx, true);
        break;
      }
      case ChainOp::Kind::PowXm1: {
        CostLedger::Phase ph(l, "pow_xm1");
        Elt sq;
        Elt r = ops.pow_digits(get(o.a), dxm1, true, o.capture.empty() ? nullptr : &sq);
        if (!o.capture.empty()) reg[o.capture] = sq;
        reg[o.dst] = std::move(r);
        break;
      }
      case ChainOp::Kind::Mul: {
        CostLedger::Phase ph(l, "mul");
        reg[o.dst] = ops.mul(get(o.a), get(o.b));
        break;
      }
      case ChainOp::Kind::Sqr: {
        CostLedger::Phase ph(l, "sqr");
        reg[o.dst] = ops.sqr(get(o.a));
        break;
      }
      case ChainOp::Kind::Cinv: {
        CostLedger::Phase ph(l, "cyclotomic_inverse");
        reg[o.dst] = ops.cyclotomic_inverse(get(o.a));
        break;
      }
      case ChainOp::Kind::Frob: {
        CostLedger::Phase ph(l, "frobenius");
        reg[o.dst] = ops.frobenius(get(o.a), o.power);
        break;
      }
    }
  }
  return get("out");
}

}  // namespace oddpair
