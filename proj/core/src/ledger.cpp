// SPDX-License-Identifier: Apache-2.0
#include "oddpair/ledger.hpp"

#include <stdexcept>

namespace oddpair {

namespace {

void append_term(std::string& out, long long v, const char* sym) {
  if (v == 0) return;
  if (!out.empty()) out += v < 0 ? "-" : "+";
  else if (v < 0) out += "-";
  unsigned long long a = v < 0 ? -static_cast<unsigned long long>(v) : v;
  if (a != 1) out += std::to_string(a);
  out += sym;
}

}  // namespace

std::string OpCount::str() const {
  std::string out;
  append_term(out, static_cast<long long>(i), "I1");
  append_term(out, static_cast<long long>(m), "M1");
  append_term(out, static_cast<long long>(s), "S1");
  return out.empty() ? "0" : out;
}

OpDelta OpDelta::between(const OpCount& from, const OpCount& to) {
  return {static_cast<std::int64_t>(to.m) - static_cast<std::int64_t>(from.m),
          static_cast<std::int64_t>(to.s) - static_cast<std::int64_t>(from.s),
          static_cast<std::int64_t>(to.i) - static_cast<std::int64_t>(from.i)};
}

std::string OpDelta::str() const {
  std::string out;
  append_term(out, i, "I1");
  append_term(out, m, "M1");
  append_term(out, s, "S1");
  return out.empty() ? "0" : out;
}

OpCount CostLedger::phase_total(const std::string& prefix) const {
  OpCount acc;
  for (const auto& [path, c] : phases_) {
    if (path == prefix || (path.size() > prefix.size() && path.compare(0, prefix.size(), prefix) == 0 &&
                           (prefix.empty() || path[prefix.size()] == '/')))
      acc += c;
  }
  return acc;
}

OpCount CostLedger::diff(const OpCount& before, const OpCount& after) {
  if (after.m < before.m || after.s < before.s || after.i < before.i)
    throw std::logic_error("ledger diff: snapshots out of order");
  return {after.m - before.m, after.s - before.s, after.i - before.i};
}

CostLedger::Phase::Phase(CostLedger& l, const std::string& name) : l_(l), saved_(l.path_) {
  l_.path_ = saved_.empty() ? name : saved_ + "/" + name;
  l_.current_ = nullptr;
}

CostLedger::Phase::~Phase() {
  l_.path_ = saved_;
  l_.current_ = nullptr;
}

}  // namespace oddpair
