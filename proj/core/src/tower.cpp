// SPDX-License-Identifier: Apache-2.0
#include "oddpair/tower.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>

#include "oddpair/errors.hpp"

namespace oddpair {

Elt block(const Elt& a, int j, int m) {
  return Elt(a.begin() + static_cast<std::ptrdiff_t>(j) * m, a.begin() + static_cast<std::ptrdiff_t>(j + 1) * m);
}

Elt join(const std::vector<Elt>& parts) {
  Elt out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<int> binary_digits(const mpz_class& e) {
  std::vector<int> d;
  if (e <= 0) return d;
  for (auto i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i)
    d.push_back(mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) ? 1 : 0);
  return d;
}

namespace {

// Inverse of the 9x9 evaluation matrix at 0, 1, -1, 2, -2, 3, -3, 4, inf,
// scaled to integers.
void toom9_matrix(std::array<std::array<mpz_class, 9>, 9>& num, mpz_class& den) {
  const int pts[8] = {0, 1, -1, 2, -2, 3, -3, 4};
  std::array<std::array<mpq_class, 18>, 9> m;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      if (r == 8) {
        m[r][c] = c == 8 ? 1 : 0;
      } else {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(std::abs(pts[r])), static_cast<unsigned long>(c));
        if (pts[r] < 0 && c % 2 == 1) v = -v;
        if (pts[r] == 0) v = c == 0 ? 1 : 0;
        m[r][c] = v;
      }
      m[r][9 + c] = r == c ? 1 : 0;
    }
  }
  for (int c = 0; c < 9; ++c) {
    int piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    mpq_class s = m[c][c];
    for (auto& v : m[c]) v /= s;
    for (int r = 0; r < 9; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (int j = 0; j < 18; ++j) m[r][j] -= f * m[c][j];
    }
  }
  den = 1;
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m[r][9 + c].get_den_mpz_t());
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) {
      mpq_class v = m[r][9 + c] * den;
      num[r][c] = v.get_num();
    }
}

}  // namespace

Tower::Tower(std::shared_ptr<const PrimeField> field, int k, long residue)
    : field_(std::move(field)), k_(k), xi_(residue) {
  const PrimeField& F = *field_;
  switch (k) {
    case 9:
      steps_ = {1, 3, 3};
      break;
    case 15:
      steps_ = {1, 5, 3};
      break;
    case 27:
      steps_ = {1, 3, 3, 3};
      break;
    default:
      throw InvalidParameters("unsupported embedding degree " + std::to_string(k));
  }
  if (F.mod3() != 1) throw InvalidParameters("p is not 1 mod 3");
  if (k == 15 && F.mod5() != 1) throw InvalidParameters("p is not 1 mod 5");
  Fe x = F.from_int(residue);
  if (x == 0 || !F.is_cubic_nonresidue(x))
    throw InvalidParameters("tower residue " + std::to_string(residue) + " is a cube mod p");
  if (k == 15 && !F.is_fifth_nonresidue(x))
    throw InvalidParameters("tower residue " + std::to_string(residue) + " is a fifth power mod p");

  dims_ = {1};
  for (std::size_t l = 1; l < steps_.size(); ++l) dims_.push_back(dims_.back() * steps_[l]);
  flat_ = {0};
  for (std::size_t l = 1; l < steps_.size(); ++l) {
    std::vector<int> next;
    for (int j = 0; j < steps_[l]; ++j)
      for (int e : flat_) next.push_back(j + steps_[l] * e);
    flat_ = std::move(next);
  }
  flat_inv_.assign(k_, -1);
  for (int i = 0; i < k_; ++i) flat_inv_[flat_[i]] = i;

  xi_inv_ = F.inv_free(x);

  const mpz_class& p = F.modulus();
  consts_.alpha = F.pow_free(x, (p - 1) / 3);
  mpz_class pk3;
  mpz_pow_ui(pk3.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k_ / 3));
  consts_.mu = F.pow_free(x, ((pk3 - 1) / k_) % (p - 1));
  if ((p - 1) % 9 == 0) consts_.beta = F.pow_free(x, (p - 1) / 9);
  if ((p - 1) % 27 == 0) consts_.gamma = F.pow_free(x, (p - 1) / 27);
  if (k_ == 15) {
    consts_.theta = F.pow_free(x, (p - 1) / 5);
    const Fe& th = *consts_.theta;
    tau_ = F.add(th, F.pow_free(th, 4));
    toom9_matrix(toom9_n_, toom9_den_);
  }
  build_frobenius();
}

int Tower::level_of(std::size_t n) const {
  for (std::size_t l = 0; l < dims_.size(); ++l)
    if (static_cast<std::size_t>(dims_[l]) == n) return static_cast<int>(l);
  throw FieldMismatch("element length " + std::to_string(n) + " matches no tower level");
}

void Tower::build_frobenius() {
  const PrimeField& F = *field_;
  const mpz_class& p = F.modulus();
  Fe x = F.from_int(xi_);
  for (int i : frobenius_indices()) {
    FrobeniusMap m;
    m.power = i;
    m.dest.resize(k_);
    m.coef.resize(k_);
    mpz_class pi;
    mpz_pow_ui(pi.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(i));
    for (int idx = 0; idx < k_; ++idx) {
      mpz_class n = flat_[idx];
      mpz_class np = n * pi;
      mpz_class n2 = np % k_;
      m.dest[idx] = flat_inv_[n2.get_si()];
      m.coef[idx] = F.pow_free(x, ((np - n2) / k_) % (p - 1));
      if (m.coef[idx] != 1) ++m.cost;
    }
    frob_.push_back(std::move(m));
  }
}

std::vector<int> Tower::frobenius_indices() const {
  std::vector<int> out;
  int hi = k_ == 9 ? 8 : k_ == 15 ? 10 : 9;
  for (int i = 1; i <= hi; ++i) out.push_back(i);
  if (k_ == 27) out.push_back(18);
  return out;
}

bool Tower::supports_frobenius(int i) const {
  auto v = frobenius_indices();
  return std::find(v.begin(), v.end(), i) != v.end();
}

const FrobeniusMap& Tower::frobenius_map(int i) const {
  for (const auto& m : frob_)
    if (m.power == i) return m;
  throw FieldMismatch("unsupported Frobenius power " + std::to_string(i) + " for k=" + std::to_string(k_));
}

Elt Tower::one(int level) const {
  Elt e = zero(level);
  e[0] = 1;
  return e;
}

Elt Tower::random(int level, std::mt19937_64& rng) const {
  Elt e(dims_.at(level));
  for (auto& c : e) c = field_->random(rng);
  return e;
}

Elt Tower::embed(const Elt& a, int to_level) const {
  Elt e = zero(to_level);
  std::copy(a.begin(), a.end(), e.begin());
  return e;
}

std::optional<Elt> Tower::restrict(const Elt& a, int to_level) const {
  auto n = static_cast<std::size_t>(dims_.at(to_level));
  if (n > a.size()) return std::nullopt;
  for (std::size_t i = n; i < a.size(); ++i)
    if (a[i] != 0) return std::nullopt;
  return Elt(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
}

bool Tower::is_zero(const Elt& a) const {
  return std::all_of(a.begin(), a.end(), [](const Fe& c) { return c == 0; });
}

bool Tower::is_one(const Elt& a) const {
  if (a.empty() || a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](const Fe& c) { return c == 0; });
}

std::string Tower::to_hex(const Elt& a) const {
  std::string s;
  for (const auto& c : a) s += field_->to_hex(c);
  return s;
}

Elt Tower::from_hex(const std::string& s, int level) const {
  std::size_t w = field_->to_hex(Fe(0)).size();
  auto n = static_cast<std::size_t>(dims_.at(level));
  if (s.size() != w * n) throw FieldMismatch("hex length does not match level");
  Elt e(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class v = oddpair::from_hex(s.substr(i * w, w));
    if (v >= field_->modulus()) throw FieldMismatch("coefficient out of range");
    e[i] = v;
  }
  return e;
}

// ---------------------------------------------------------------------------

Elt TowerOps::add(const Elt& a, const Elt& b) const {
  if (a.size() != b.size()) throw FieldMismatch("level mismatch");
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.add(a[i], b[i]);
  return r;
}

Elt TowerOps::sub(const Elt& a, const Elt& b) const {
  if (a.size() != b.size()) throw FieldMismatch("level mismatch");
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.sub(a[i], b[i]);
  return r;
}

Elt TowerOps::neg(const Elt& a) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.neg(a[i]);
  return r;
}

Elt TowerOps::mul_small(const Elt& a, long c) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.mul_small(a[i], c);
  return r;
}

Elt TowerOps::mul_const(const Elt& a, const Fe& c) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.mul_const(a[i], c);
  return r;
}

Elt TowerOps::scale(const Elt& a, const Fe& c) const {
  Elt r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.mul(a[i], c, l_);
  return r;
}

Elt TowerOps::mul(const Elt& a, const Elt& b) const {
  if (a.size() != b.size()) throw FieldMismatch("level mismatch");
  return mul_at(a, b, t_.level_of(a.size()));
}

Elt TowerOps::sqr(const Elt& a) const { return sqr_at(a, t_.level_of(a.size())); }

Elt TowerOps::inv(const Elt& a) const { return inv_at(a, t_.level_of(a.size())); }

Elt TowerOps::mul_gen(const Elt& a, int level) const {
  if (level == 0) return {F_.mul_small(a[0], t_.residue())};
  int d = t_.step(level), m = t_.dim(level - 1);
  std::vector<Elt> parts(d);
  parts[0] = mul_gen(block(a, d - 1, m), level - 1);
  for (int j = 1; j < d; ++j) parts[j] = block(a, j - 1, m);
  return join(parts);
}

Elt TowerOps::div_gen(const Elt& a, int level) const {
  if (level == 0) return {F_.mul_const(a[0], t_.residue_inv())};
  int d = t_.step(level), m = t_.dim(level - 1);
  std::vector<Elt> parts(d);
  for (int j = 0; j + 1 < d; ++j) parts[j] = block(a, j + 1, m);
  parts[d - 1] = div_gen(block(a, 0, m), level - 1);
  return join(parts);
}

Elt TowerOps::mul_at(const Elt& a, const Elt& b, int level) const {
  if (level == 0) return {F_.mul(a[0], b[0], l_)};
  return reduced_product(a, b, level, false);
}

Elt TowerOps::sqr_at(const Elt& a, int level) const {
  if (level == 0) return {F_.sqr(a[0], l_)};
  return reduced_product(a, a, level, true);
}

Elt TowerOps::inv_at(const Elt& a, int level) const {
  if (level == 0) return {F_.inv(a[0], l_)};
  if (t_.step(level) == 5) return inv_quintic(a);
  return inv_cubic(a, level);
}

namespace {

// Stack of initialized mpz_t reused across products so that the inner
// loops never allocate once the limbs have grown.
class Scratch {
 public:
  static constexpr std::size_t kChunk = 2048;

  ~Scratch() {
    for (auto& c : chunks_)
      for (std::size_t i = 0; i < kChunk; ++i) mpz_clear(&c[i]);
  }

  mpz_ptr take(std::size_t n) {
    std::size_t chunk = top_ / kChunk, off = top_ % kChunk;
    if (off + n > kChunk) {
      ++chunk;
      off = 0;
    }
    while (chunks_.size() <= chunk) {
      chunks_.push_back(std::make_unique<__mpz_struct[]>(kChunk));
      for (std::size_t i = 0; i < kChunk; ++i) mpz_init(&chunks_.back()[i]);
    }
    top_ = chunk * kChunk + off + n;
    return &chunks_[chunk][off];
  }

  std::size_t top_ = 0;

 private:
  std::vector<std::unique_ptr<__mpz_struct[]>> chunks_;
};

thread_local Scratch scratch;

struct Frame {
  std::size_t saved = scratch.top_;
  ~Frame() { scratch.top_ = saved; }
};

void vadd(mpz_ptr r, mpz_srcptr a, mpz_srcptr b, int n) {
  for (int i = 0; i < n; ++i) mpz_add(r + i, a + i, b + i);
}

void vsub(mpz_ptr r, mpz_srcptr a, mpz_srcptr b, int n) {
  for (int i = 0; i < n; ++i) mpz_sub(r + i, a + i, b + i);
}

}  // namespace

Elt TowerOps::reduced_product(const Elt& a, const Elt& b, int level, bool square) const {
  auto n = static_cast<int>(a.size());
  Frame f;
  mpz_ptr x = scratch.take(static_cast<std::size_t>(3 * n));
  mpz_ptr y = x + n, out = x + 2 * n;
  for (int i = 0; i < n; ++i) {
    mpz_set(x + i, a[i].get_mpz_t());
    if (!square) mpz_set(y + i, b[i].get_mpz_t());
  }
  raw_mul(x, square ? x : y, out, level, square);
  Elt r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mpz_mod(r[i].get_mpz_t(), out + i, F_.modulus().get_mpz_t());
  return r;
}

void TowerOps::raw_mul(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level, bool square) const {
  if (level == 0) {
    if (square) {
      l_.sqr();
      mpz_mul(out, a, a);
    } else {
      l_.mul();
      mpz_mul(out, a, b);
    }
    return;
  }
  if (t_.step(level) == 5) return raw_toom9(a, b, out, square);
  if (square || t_.toom_cubic(level)) return raw_toom3(a, b, out, level, square);
  raw_karatsuba3(a, b, out, level);
}

void TowerOps::raw_gen(mpz_srcptr a, mpz_ptr out, int level) const {
  if (level == 0) {
    mpz_mul_si(out, a, t_.residue());
    return;
  }
  int d = t_.step(level), m = t_.dim(level - 1);
  raw_gen(a + (d - 1) * m, out, level - 1);
  for (int i = 0; i < (d - 1) * m; ++i) mpz_set(out + m + i, a + i);
}

void TowerOps::raw_karatsuba3(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level) const {
  int m = t_.dim(level - 1), s = level - 1;
  Frame f;
  mpz_ptr v0 = scratch.take(static_cast<std::size_t>(9 * m));
  mpz_ptr v1 = v0 + m, v2 = v0 + 2 * m, t12 = v0 + 3 * m, t01 = v0 + 4 * m, t02 = v0 + 5 * m;
  mpz_ptr sa = v0 + 6 * m, sb = v0 + 7 * m, g = v0 + 8 * m;
  mpz_srcptr a0 = a, a1 = a + m, a2 = a + 2 * m, b0 = b, b1 = b + m, b2 = b + 2 * m;
  raw_mul(a0, b0, v0, s, false);
  raw_mul(a1, b1, v1, s, false);
  raw_mul(a2, b2, v2, s, false);
  vadd(sa, a1, a2, m);
  vadd(sb, b1, b2, m);
  raw_mul(sa, sb, t12, s, false);
  vadd(sa, a0, a1, m);
  vadd(sb, b0, b1, m);
  raw_mul(sa, sb, t01, s, false);
  vadd(sa, a0, a2, m);
  vadd(sb, b0, b2, m);
  raw_mul(sa, sb, t02, s, false);
  // c0 = v0 + g (t12 - v1 - v2)
  vsub(t12, t12, v1, m);
  vsub(t12, t12, v2, m);
  raw_gen(t12, g, s);
  vadd(out, v0, g, m);
  // c1 = t01 - v0 - v1 + g v2
  raw_gen(v2, g, s);
  vsub(t01, t01, v0, m);
  vsub(t01, t01, v1, m);
  vadd(out + m, t01, g, m);
  // c2 = t02 - v0 - v2 + v1
  vsub(t02, t02, v0, m);
  vsub(t02, t02, v2, m);
  vadd(out + 2 * m, t02, v1, m);
}

// Evaluation at 0, 1, -1, 2, inf. The interpolation divides by 2 and 6
// exactly because the coefficients are integers.
void TowerOps::raw_toom3(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, int level, bool square) const {
  int m = t_.dim(level - 1), s = level - 1;
  Frame f;
  mpz_ptr v0 = scratch.take(static_cast<std::size_t>(9 * m));
  mpz_ptr v1 = v0 + m, vm = v0 + 2 * m, v2 = v0 + 3 * m, vi = v0 + 4 * m;
  mpz_ptr ea = v0 + 5 * m, eb = v0 + 6 * m, sa = v0 + 7 * m, sb = v0 + 8 * m;
  auto op = [&](mpz_srcptr x, mpz_srcptr y, mpz_ptr r) { raw_mul(x, square ? x : y, r, s, square); };
  auto eval2 = [&](mpz_ptr r, mpz_srcptr x) {
    for (int i = 0; i < m; ++i) {
      mpz_mul_2exp(r + i, x + 2 * m + i, 1);
      mpz_add(r + i, r + i, x + m + i);
      mpz_mul_2exp(r + i, r + i, 1);
      mpz_add(r + i, r + i, x + i);
    }
  };
  vadd(sa, a, a + 2 * m, m);
  if (!square) vadd(sb, b, b + 2 * m, m);
  op(a, b, v0);
  vadd(ea, sa, a + m, m);
  if (!square) vadd(eb, sb, b + m, m);
  op(ea, eb, v1);
  vsub(ea, sa, a + m, m);
  if (!square) vsub(eb, sb, b + m, m);
  op(ea, eb, vm);
  eval2(ea, a);
  if (!square) eval2(eb, b);
  op(ea, eb, v2);
  op(a + 2 * m, b + 2 * m, vi);
  mpz_ptr c2 = out + 2 * m, sm = ea, c3 = eb, c1 = sa;
  for (int i = 0; i < m; ++i) {
    mpz_add(c2 + i, v1 + i, vm + i);
    mpz_divexact_ui(c2 + i, c2 + i, 2);
    mpz_sub(c2 + i, c2 + i, v0 + i);
    mpz_sub(c2 + i, c2 + i, vi + i);
    mpz_sub(sm + i, v1 + i, vm + i);
    mpz_divexact_ui(sm + i, sm + i, 2);
    // 6 c3 = v2 - v0 - 4 c2 - 16 vi - 2 sm
    mpz_sub(c3 + i, v2 + i, v0 + i);
    mpz_submul_ui(c3 + i, c2 + i, 4);
    mpz_submul_ui(c3 + i, vi + i, 16);
    mpz_submul_ui(c3 + i, sm + i, 2);
    mpz_divexact_ui(c3 + i, c3 + i, 6);
    mpz_sub(c1 + i, sm + i, c3 + i);
  }
  raw_gen(c3, sb, s);
  vadd(out, v0, sb, m);
  raw_gen(vi, sb, s);
  vadd(out + m, c1, sb, m);
}

void TowerOps::raw_toom9(mpz_srcptr a, mpz_srcptr b, mpz_ptr out, bool square) const {
  static constexpr long pts[8] = {0, 1, -1, 2, -2, 3, -3, 4};
  Frame f;
  mpz_ptr v = scratch.take(20);
  mpz_ptr ea = v + 9, eb = v + 10, c = v + 11;
  auto eval = [&](mpz_ptr r, mpz_srcptr x, long t) {
    mpz_set(r, x + 4);
    for (int i = 3; i >= 0; --i) {
      mpz_mul_si(r, r, t);
      mpz_add(r, r, x + i);
    }
  };
  for (int i = 0; i < 9; ++i) {
    if (i < 8) {
      eval(ea, a, pts[i]);
      if (!square) eval(eb, b, pts[i]);
    } else {
      mpz_set(ea, a + 4);
      if (!square) mpz_set(eb, b + 4);
    }
    raw_mul(ea, eb, v + i, 0, square);
  }
  const auto& N = t_.toom9_numerators();
  for (int j = 0; j < 9; ++j) {
    mpz_set_ui(c + j, 0);
    for (int i = 0; i < 9; ++i) mpz_addmul(c + j, N[j][i].get_mpz_t(), v + i);
    mpz_divexact(c + j, c + j, t_.toom9_denominator().get_mpz_t());
  }
  for (int j = 0; j < 4; ++j) {
    mpz_mul_si(out + j, c + j + 5, t_.residue());
    mpz_add(out + j, out + j, c + j);
  }
  mpz_set(out + 4, c + 4);
}

Elt TowerOps::inv_cubic(const Elt& a, int level) const {
  int m = t_.dim(level - 1), s = level - 1;
  Elt a0 = block(a, 0, m), a1 = block(a, 1, m), a2 = block(a, 2, m);
  Elt s0 = sqr_at(a0, s), s2 = sqr_at(a2, s);
  Elt m12 = mul_at(a1, a2, s), m01 = mul_at(a0, a1, s);
  Elt t = mul_at(sub(a1, a0), add(a1, a2), s);
  Elt c0 = sub(s0, mul_gen(m12, s));
  Elt c1 = sub(mul_gen(s2, s), m01);
  Elt c2 = add(sub(t, m12), m01);
  Elt n = add(mul_at(a0, c0, s), mul_gen(add(mul_at(a1, c2, s), mul_at(a2, c1, s)), s));
  Elt ni = inv_at(n, s);
  return join({mul_at(c0, ni, s), mul_at(c1, ni, s), mul_at(c2, ni, s)});
}

// Norm-based inversion in F_p5: c and d are the products of the conjugate
// pairs (p, p^4) and (p^2, p^3), both built from the same 15 products.
Elt TowerOps::inv_quintic(const Elt& a) const {
  const long xi = t_.residue();
  std::array<std::array<Fe, 5>, 5> pr;
  for (int i = 0; i < 5; ++i) pr[i][i] = F_.sqr(a[i], l_);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pr[i][j] = pr[j][i] = F_.mul(a[i], a[j], l_);
  auto term = [&](int i, int j) { return i + j >= 5 ? F_.mul_small(pr[i][j], xi) : pr[i][j]; };
  Elt c(5), d(5);
  for (int n = 0; n < 5; ++n) {
    int di = (3 * n) % 5;
    Fe q = term(di, di);
    Fe ma = 0, mb = 0;
    for (int i = 0; i < 5; ++i) {
      int j = ((n - i) % 5 + 5) % 5;
      if (i >= j) continue;
      int diff = j - i;
      if (diff == 1 || diff == 4)
        ma = term(i, j);
      else
        mb = term(i, j);
    }
    c[n] = F_.add(F_.sub(q, mb), F_.mul(t_.tau(), F_.sub(ma, mb), l_));
    d[n] = F_.sub(F_.sub(F_.sub(F_.mul_small(q, 2), ma), mb), c[n]);
  }
  Elt g = mul_at(c, d, 1);
  Fe n = F_.mul(a[0], g[0], l_);
  for (int i = 1; i < 5; ++i) n = F_.add(n, F_.mul_small(F_.mul(a[i], g[5 - i], l_), xi));
  Fe ni = F_.inv(n, l_);
  return scale(g, ni);
}

Elt TowerOps::frobenius(const Elt& a, int i) const {
  if (static_cast<int>(a.size()) != t_.k()) throw FieldMismatch("Frobenius is defined on the top level only");
  const auto& m = t_.frobenius_map(i);
  Elt r(a.size());
  for (std::size_t idx = 0; idx < a.size(); ++idx)
    r[m.dest[idx]] = m.coef[idx] == 1 ? a[idx] : F_.mul(a[idx], m.coef[idx], l_);
  return r;
}

bool TowerOps::cyclotomic_test(const Elt& a) const {
  CostLedger scratch;
  TowerOps ops(t_, scratch);
  int k3 = t_.k() / 3;
  Elt p1 = ops.frobenius(a, k3);
  Elt p2 = t_.supports_frobenius(2 * k3) ? ops.frobenius(a, 2 * k3) : ops.frobenius(p1, k3);
  return t_.is_one(ops.mul(ops.mul(a, p1), p2));
}

// For a = A0 + A1 g + A2 g^2 in the cyclotomic subgroup the product of its
// two conjugates over the cubic subfield is the inverse.
Elt TowerOps::cyclotomic_inverse(const Elt& a) const {
  int top = t_.top(), s = top - 1, m = t_.dim(s);
  Elt a0 = block(a, 0, m), a1 = block(a, 1, m), a2 = block(a, 2, m);
  Elt c0 = sub(sqr_at(a0, s), mul_gen(mul_at(a1, a2, s), s));
  Elt c1 = sub(mul_gen(sqr_at(a2, s), s), mul_at(a0, a1, s));
  Elt c2 = sub(sqr_at(a1, s), mul_at(a0, a2, s));
  return join({c0, c1, c2});
}

Elt TowerOps::cyclotomic_inverse_checked(const Elt& a) const {
  if (static_cast<int>(a.size()) != t_.k() || !cyclotomic_test(a)) throw NotCyclotomic();
  return cyclotomic_inverse(a);
}

Elt TowerOps::pow(const Elt& a, const mpz_class& e, bool cyclotomic) const {
  if (e == 0) return t_.one(t_.level_of(a.size()));
  if (e < 0) {
    Elt ai = cyclotomic ? cyclotomic_inverse(a) : inv(a);
    return pow(ai, -e, cyclotomic);
  }
  return pow_digits(a, binary_digits(e), cyclotomic);
}

Elt TowerOps::pow_digits(const Elt& a, const std::vector<int>& digits, bool cyclotomic, Elt* first_square) const {
  if (digits.empty() || digits.front() != 1) throw Error("exponent digits must start with 1");
  std::optional<Elt> ainv;
  Elt acc = a;
  for (std::size_t i = 1; i < digits.size(); ++i) {
    acc = sqr(acc);
    if (i == 1 && first_square) *first_square = acc;
    if (digits[i] == 1) {
      acc = mul(acc, a);
    } else if (digits[i] == -1) {
      if (!ainv) ainv = cyclotomic ? cyclotomic_inverse(a) : inv(a);
      acc = mul(acc, *ainv);
    }
  }
  return acc;
}

}  // namespace oddpair
