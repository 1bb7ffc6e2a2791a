// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oddpair {

// Base-field operation counts: multiplications, squarings, inversions.
struct OpCount {
  std::uint64_t m = 0;
  std::uint64_t s = 0;
  std::uint64_t i = 0;

  OpCount& operator+=(const OpCount& o) {
    m += o.m;
    s += o.s;
    i += o.i;
    return *this;
  }
  friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
  friend OpCount operator*(std::uint64_t k, const OpCount& a) { return {k * a.m, k * a.s, k * a.i}; }
  friend bool operator==(const OpCount&, const OpCount&) = default;

  // "I1+3024M1+3060S1" style, zero terms omitted.
  std::string str() const;
};

// Signed difference of two counts, used when itemizing deviations.
struct OpDelta {
  std::int64_t m = 0;
  std::int64_t s = 0;
  std::int64_t i = 0;
  static OpDelta between(const OpCount& from, const OpCount& to);
  bool zero() const { return m == 0 && s == 0 && i == 0; }
  std::string str() const;
};

// Monotone accumulator. Counts are attributed to the active phase path
// (e.g. "final_exp/hard/frobenius") as well as to the total.
class CostLedger {
 public:
  explicit CostLedger(std::string scope = {}) : scope_(std::move(scope)) {}
  CostLedger(const CostLedger& o)
      : scope_(o.scope_), path_(o.path_), total_(o.total_), adds_(o.adds_), phases_(o.phases_) {}
  CostLedger& operator=(const CostLedger& o) {
    if (this != &o) {
      scope_ = o.scope_;
      path_ = o.path_;
      total_ = o.total_;
      adds_ = o.adds_;
      phases_ = o.phases_;
      current_ = nullptr;
    }
    return *this;
  }

  void mul(std::uint64_t n = 1) { bump({n, 0, 0}); }
  void sqr(std::uint64_t n = 1) { bump({0, n, 0}); }
  void inv(std::uint64_t n = 1) { bump({0, 0, n}); }
  void add(std::uint64_t n = 1) { adds_ += n; }

  const OpCount& total() const { return total_; }
  OpCount snapshot() const { return total_; }
  std::uint64_t additions() const { return adds_; }
  const std::string& scope() const { return scope_; }
  const std::string& phase() const { return path_; }

  // Sum over every phase path equal to `prefix` or nested below it.
  OpCount phase_total(const std::string& prefix) const;
  const std::map<std::string, OpCount>& phases() const { return phases_; }

  static OpCount diff(const OpCount& before, const OpCount& after);

  class Phase {
   public:
    Phase(CostLedger& l, const std::string& name);
    ~Phase();
    Phase(const Phase&) = delete;
    Phase& operator=(const Phase&) = delete;

   private:
    CostLedger& l_;
    std::string saved_;
  };

 private:
  void bump(const OpCount& c) {
    total_ += c;
    if (!current_) current_ = &phases_[path_];
    *current_ += c;
  }

  std::string scope_;
  std::string path_;
  OpCount total_;
  std::uint64_t adds_ = 0;
  std::map<std::string, OpCount> phases_;
  OpCount* current_ = nullptr;  // entry of phases_ for path_, looked up lazily
};

}  // namespace oddpair
