// SPDX-License-Identifier: Apache-2.0
#include "oddpair/fp.hpp"

#include "oddpair/errors.hpp"

namespace oddpair {

bool is_probable_prime(const mpz_class& n, int rounds) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

mpz_class random_below(const mpz_class& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw std::invalid_argument("random_below: bound must be positive");
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 64;
  mpz_class v = 0;
  for (std::size_t got = 0; got < bits; got += 64) {
    v <<= 64;
    std::uint64_t w = rng();
    mpz_class limb;
    mpz_import(limb.get_mpz_t(), 1, 1, sizeof w, 0, 0, &w);
    v += limb;
  }
  return v % bound;
}

std::string to_hex(const mpz_class& v) {
  if (v < 0) return "-" + to_hex(mpz_class(-v));
  return v.get_str(16);
}

mpz_class from_hex(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t.erase(0, 1);
  }
  if (t.size() > 1 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t.erase(0, 2);
  if (t.empty()) throw std::invalid_argument("empty hex string");
  mpz_class v;
  if (v.set_str(t, 16) != 0) throw std::invalid_argument("bad hex string: " + s);
  return neg ? mpz_class(-v) : v;
}

PrimeField::PrimeField(mpz_class p) : p_(std::move(p)) {
  if (p_ < 5 || !is_probable_prime(p_)) throw InvalidParameters("field modulus is not a prime > 3");
  bits_ = mpz_sizeinbase(p_.get_mpz_t(), 2);
  mod3_ = mpz_fdiv_ui(p_.get_mpz_t(), 3);
  mod5_ = mpz_fdiv_ui(p_.get_mpz_t(), 5);
}

Fe PrimeField::reduce(const mpz_class& v) const {
  Fe r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::add(const Fe& a, const Fe& b) const {
  Fe r;
  mpz_add(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (mpz_cmp(r.get_mpz_t(), p_.get_mpz_t()) >= 0) mpz_sub(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::sub(const Fe& a, const Fe& b) const {
  Fe r;
  mpz_sub(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (mpz_sgn(r.get_mpz_t()) < 0) mpz_add(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::neg(const Fe& a) const {
  if (mpz_sgn(a.get_mpz_t()) == 0) return a;
  Fe r;
  mpz_sub(r.get_mpz_t(), p_.get_mpz_t(), a.get_mpz_t());
  return r;
}

Fe PrimeField::mul(const Fe& a, const Fe& b, CostLedger& l) const {
  l.mul();
  return mul_const(a, b);
}

Fe PrimeField::sqr(const Fe& a, CostLedger& l) const {
  l.sqr();
  Fe r;
  mpz_mul(r.get_mpz_t(), a.get_mpz_t(), a.get_mpz_t());
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::inv(const Fe& a, CostLedger& l) const {
  l.inv();
  return inv_free(a);
}

Fe PrimeField::inv_free(const Fe& a) const {
  Fe r;
  if (mpz_sgn(a.get_mpz_t()) == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
    throw DivisionByZero();
  return r;
}

Fe PrimeField::pow(const Fe& a, const mpz_class& e, CostLedger& l) const {
  if (e < 0) return pow(inv(a, l), mpz_class(-e), l);
  if (e == 0) return Fe(1);
  Fe r = a;
  std::size_t n = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = n - 1; i-- > 0;) {
    r = sqr(r, l);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a, l);
  }
  return r;
}

Fe PrimeField::mul_small(const Fe& a, long c) const {
  Fe r;
  mpz_mul_si(r.get_mpz_t(), a.get_mpz_t(), c);
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::mul_const(const Fe& a, const Fe& c) const {
  Fe r;
  mpz_mul(r.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Fe PrimeField::pow_free(const Fe& a, const mpz_class& e) const {
  Fe r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
  return r;
}

bool PrimeField::is_cubic_nonresidue(const Fe& a) const {
  if (mod3_ != 1) throw InvalidParameters("cubic residuosity needs p = 1 mod 3");
  return pow_free(reduce(a), mpz_class((p_ - 1) / 3)) != 1;
}

bool PrimeField::is_fifth_nonresidue(const Fe& a) const {
  if (mod5_ != 1) throw InvalidParameters("quintic residuosity needs p = 1 mod 5");
  return pow_free(reduce(a), mpz_class((p_ - 1) / 5)) != 1;
}

bool PrimeField::is_square(const Fe& a) const {
  return mpz_legendre(reduce(a).get_mpz_t(), p_.get_mpz_t()) >= 0;
}

std::optional<Fe> PrimeField::sqrt(const Fe& a0) const {
  Fe a = reduce(a0);
  if (a == 0) return Fe(0);
  if (mpz_legendre(a.get_mpz_t(), p_.get_mpz_t()) != 1) return std::nullopt;
  // Tonelli-Shanks.
  mpz_class q = p_ - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  Fe z = 2;
  while (mpz_legendre(z.get_mpz_t(), p_.get_mpz_t()) != -1) z += 1;
  Fe c = pow_free(z, q);
  Fe x = pow_free(a, mpz_class((q + 1) / 2));
  Fe t = pow_free(a, q);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Fe tt = t;
    while (tt != 1) {
      tt = mul_const(tt, tt);
      ++i;
    }
    Fe b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mul_const(b, b);
    x = mul_const(x, b);
    c = mul_const(b, b);
    t = mul_const(t, c);
    m = i;
  }
  return x;
}

std::string PrimeField::to_hex(const Fe& a) const {
  std::string h = a.get_str(16);
  std::size_t width = (bits_ + 3) / 4;
  if (h.size() < width) h.insert(0, width - h.size(), '0');
  return h;
}

}  // namespace oddpair
