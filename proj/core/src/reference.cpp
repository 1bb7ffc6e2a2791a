// SPDX-License-Identifier: Apache-2.0
#include "oddpair/reference.hpp"

#include <algorithm>
#include <optional>

#include "oddpair/errors.hpp"

namespace oddpair::reference {

namespace {

// Exponent of the level generator carried by each coefficient index.
std::vector<int> generator_exponents(const Tower& t, int level) {
  const int d = t.dim(level);
  std::vector<int> e(d);
  for (int idx = 0; idx < d; ++idx) {
    int rest = idx, below = 1, n = 0;
    for (int l = 1; l <= level; ++l) {
      int s = t.step(l);
      n += (rest % s) * (d / (below * s));
      rest /= s;
      below *= s;
    }
    e[idx] = n;
  }
  return e;
}

// Index of each generator exponent (inverse permutation).
std::vector<int> exponent_index(const std::vector<int>& e) {
  std::vector<int> inv(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) inv[e[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

namespace {

Elt convolve(const Tower& t, const Elt& a, const Elt& b, bool square) {
  const int level = t.level_of(a.size());
  const int d = t.dim(level);
  auto ex = generator_exponents(t, level);
  auto idx = exponent_index(ex);
  const mpz_class& p = t.field().modulus();
  std::vector<mpz_class> acc(static_cast<std::size_t>(2 * d));
  mpz_class tmp;
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    if (square) {
      mpz_addmul(acc[ex[i] * 2].get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
      mpz_mul_2exp(tmp.get_mpz_t(), a[i].get_mpz_t(), 1);
      for (int j = i + 1; j < d; ++j) mpz_addmul(acc[ex[i] + ex[j]].get_mpz_t(), tmp.get_mpz_t(), a[j].get_mpz_t());
    } else {
      for (int j = 0; j < d; ++j) mpz_addmul(acc[ex[i] + ex[j]].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  Elt out(d);
  for (int n = 0; n < d; ++n) {
    mpz_class v = acc[n] + acc[n + d] * t.residue();
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    out[idx[n]] = v;
  }
  return out;
}

}  // namespace

Elt schoolbook_mul(const Tower& t, const Elt& a, const Elt& b) {
  if (a.size() != b.size()) throw FieldMismatch("operands live in different fields");
  return convolve(t, a, b, false);
}

Elt int_exp(const Tower& t, const Elt& a, const mpz_class& e) {
  const int level = t.level_of(a.size());
  if (e < 0) {
    if (t.is_zero(a)) throw DivisionByZero();
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), t.field().modulus().get_mpz_t(), static_cast<unsigned long>(t.dim(level)));
    return int_exp(t, int_exp(t, a, q - 2), -e);
  }
  if (e == 0) return t.one(level);
  // Left-to-right sliding window over the odd powers a, a^3, ..., a^(2^w - 1).
  const long bits = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
  const int w = bits > 512 ? 5 : bits > 64 ? 3 : 1;
  std::vector<Elt> odd{a};
  if (w > 1) {
    Elt a2 = convolve(t, a, a, true);
    for (int j = 1; j < (1 << (w - 1)); ++j) odd.push_back(schoolbook_mul(t, odd.back(), a2));
  }
  auto bit = [&](long i) { return mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0; };
  std::optional<Elt> r;
  long i = bits - 1;
  while (i >= 0) {
    if (!bit(i)) {
      r = convolve(t, *r, *r, true);
      --i;
      continue;
    }
    long lo = std::max(0L, i - w + 1);
    while (!bit(lo)) ++lo;
    unsigned v = 0;
    for (long j = i; j >= lo; --j) v = 2 * v + (bit(j) ? 1 : 0);
    if (r) {
      for (long j = i; j >= lo; --j) r = convolve(t, *r, *r, true);
      r = schoolbook_mul(t, *r, odd[v / 2]);
    } else {
      r = odd[v / 2];
    }
    i = lo - 1;
  }
  return *r;
}

Elt naive_frobenius(const Tower& t, const Elt& a, int i) {
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), t.field().modulus().get_mpz_t(), static_cast<unsigned long>(i));
  return int_exp(t, a, e);
}

std::vector<Elt> frobenius_orbit(const Tower& t, const Elt& a, int max_i) {
  std::vector<Elt> out{a};
  for (int i = 1; i <= max_i; ++i) out.push_back(int_exp(t, out.back(), t.field().modulus()));
  return out;
}

PowerMap::PowerMap(const Tower& t) : t_(t) {
  const int top = t.top();
  const int d = t.dim(top);
  for (int j = 0; j < d; ++j) {
    Elt e = t.zero(top);
    e[j] = 1;
    cols_.push_back(int_exp(t, e, t.field().modulus()));
  }
}

Elt PowerMap::operator()(const Elt& a) const {
  if (a.size() != cols_.size()) throw FieldMismatch("power map applies to the top field only");
  const std::size_t d = cols_.size();
  std::vector<mpz_class> acc(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (a[j] == 0) continue;
    for (std::size_t i = 0; i < d; ++i) mpz_addmul(acc[i].get_mpz_t(), a[j].get_mpz_t(), cols_[j][i].get_mpz_t());
  }
  Elt out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = t_.field().reduce(acc[i]);
  return out;
}

std::vector<Elt> PowerMap::orbit(const Elt& a, int max_i) const {
  std::vector<Elt> out{a};
  for (int i = 1; i <= max_i; ++i) out.push_back((*this)(out.back()));
  return out;
}

Elt tate_reference(const PairingContext& ctx, const Point& P, const Point& Qt) {
  const Tower& T = *ctx.tower;
  const int top = T.top();
  if (P.inf || Qt.inf) return T.one(top);
  const mpz_class& p = T.field().modulus();
  auto md = [&](mpz_class v) {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return v;
  };
  auto inv = [&](const mpz_class& v) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0) throw DivisionByZero();
    return r;
  };
  // Q = psi(Q') over F_{p^k}
  Point Q = untwist(ctx, Qt);
  const Elt& xQ = Q.x;
  const Elt& yQ = Q.y;

  auto affine = [&](const mpz_class& c0, const Elt& v, const mpz_class& c1) {
    // c0 + c1 * v with c0, c1 in F_p
    Elt out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = md(c1 * v[i] + (i == 0 ? c0 : mpz_class(0)));
    return out;
  };
  const mpz_class xP = P.x[0], yP = P.y[0];
  mpz_class xT = xP, yT = yP;
  bool t_inf = false;
  Elt num = T.one(top), den = T.one(top);

  auto step = [&](const mpz_class& x2, const mpz_class& y2) {
    // line through T and (x2, y2), vertical at their sum
    if (t_inf) {
      xT = x2;
      yT = y2;
      t_inf = false;
      return;
    }
    if (xT == x2 && md(yT + y2) == 0) {
      num = schoolbook_mul(T, num, affine(md(-xT), xQ, 1));
      t_inf = true;
      return;
    }
    mpz_class lam = xT == x2 ? md(3 * xT * xT * inv(md(2 * yT))) : md((y2 - yT) * inv(md(x2 - xT)));
    mpz_class x3 = md(lam * lam - xT - x2);
    mpz_class y3 = md(lam * (xT - x3) - yT);
    // y_Q - y_T - lam (x_Q - x_T)
    Elt l = yQ;
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = md(yQ[i] - lam * xQ[i] + (i == 0 ? lam * xT - yT : mpz_class(0)));
    num = schoolbook_mul(T, num, l);
    den = schoolbook_mul(T, den, affine(md(-x3), xQ, 1));
    xT = x3;
    yT = y3;
  };

  const mpz_class& r = ctx.params.r;
  for (long i = static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) - 2; i >= 0; --i) {
    num = schoolbook_mul(T, num, num);
    den = schoolbook_mul(T, den, den);
    if (!t_inf) step(xT, yT);
    if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) step(xP, yP);
  }
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(T.k()));
  Elt f = schoolbook_mul(T, num, int_exp(T, den, -1));
  return int_exp(T, f, (pk - 1) / r);
}

}  // namespace oddpair::reference
