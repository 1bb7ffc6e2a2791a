// SPDX-License-Identifier: Apache-2.0
#include "oddpair/pairing.hpp"

#include "oddpair/errors.hpp"

namespace oddpair {

namespace {

// Sparse line value l = (l0, l1 z or l2 z^2) times the vertical conjugate
// (c0, c1, c2), both with coefficients in F_{p^(k/3)}.
struct Line {
  Elt l0, lz;  // lz sits at z (D twist) or z^2 (M twist)
};

}  // namespace

Pairing::Pairing(const PairingContext& ctx) : ctx_(ctx), chain_(builtin_chain(ctx.params.k)) {}

Elt Pairing::miller_loop(const Point& Qt, const Point& P, CostLedger& l) const {
  if (Qt.inf || P.inf) return ctx_.tower->one(ctx_.tower->top());
  if (P.x.size() != 1 || static_cast<int>(Qt.x.size()) != ctx_.tower->dim(ctx_.twist_level()))
    throw InvalidPoint("expected Q on the twist and P on E(F_p)");
  if (P.x[0] == 0) throw InvalidPoint("P has x = 0, which is not in G1");
  CostLedger::Phase ph(l, "miller");
  return ctx_.params.coords == MillerCoords::Affine ? miller_affine(Qt, P, l) : miller_projective(Qt, P, l);
}

Elt Pairing::miller_affine(const Point& Qt, const Point& P, CostLedger& l) const {
  const Tower& T = *ctx_.tower;
  TowerOps o(T, l);
  const PrimeField& F = T.field();
  const int m = ctx_.twist_level();
  const bool dtw = ctx_.twist == TwistType::D;
  const Fe& xP = P.x[0];
  Elt yP = T.embed(P.y, m);
  Fe ix, ix2;
  {
    CostLedger::Phase s(l, "setup");
    ix = F.inv(xP, l);
    ix2 = F.sqr(ix, l);
  }
  Elt x = Qt.x, y = Qt.y, x2;
  {
    CostLedger::Phase s(l, "double");
    x2 = o.sqr(x);
  }
  std::optional<Elt> f;

  // lam is the slope of the chord or tangent through T, (x3, y3) the new
  // point; absorbs the line and the vertical conjugate of the new point.
  auto absorb = [&](const Elt& lam, const Elt& c, const Elt& x3, const Elt& x3sq, bool square_f) {
    Elt L0, L1, L2;
    {
      CostLedger::Phase s(l, "line");
      Elt lx = o.neg(o.scale(lam, xP));
      Elt s1 = o.scale(x3, ix), s2 = o.scale(x3sq, ix2);
      if (dtw) {
        // (y_P + c g + lx z)(1 + s2 g z + s1 z^2)
        Elt l0 = o.add(yP, o.mul_by_gen(c));
        Elt e1 = o.mul_by_gen(s2), e2 = s1;
        Elt p1 = o.mul(lx, e2), p2 = o.mul(l0, e1);
        Elt p3 = o.sub(o.sub(o.mul(o.add(l0, lx), o.add(e1, e2)), p2), p1);
        L0 = o.add(l0, o.mul_by_gen(p1));
        L1 = o.add(p2, lx);
        L2 = p3;
      } else {
        // (y_P g + c + lx z^2)(1 + s1/g z + s2/g^2 z^2)
        Elt l0 = o.add(o.mul_by_gen(yP), c);
        Elt e1 = o.div_by_gen(s1), e2 = o.div_by_gen(o.div_by_gen(s2));
        Elt a = o.mul(l0, e2), b = o.mul(lx, e1);
        Elt gb = o.mul_by_gen(b);
        Elt mid = o.sub(o.sub(o.mul(o.add(l0, o.mul_by_gen(lx)), o.add(e1, e2)), a), gb);
        L0 = o.add(l0, gb);
        L1 = mid;
        L2 = o.add(a, lx);
      }
    }
    CostLedger::Phase s(l, "accumulate");
    Elt Lf = join({L0, L1, L2});
    if (!f) {
      f = std::move(Lf);
      return;
    }
    if (square_f) f = o.sqr(*f);
    f = o.mul(*f, Lf);
  };

  auto digits = binary_digits(ctx_.params.x);
  for (std::size_t i = 1; i < digits.size(); ++i) {
    Elt lam, c, x3, y3, x3sq;
    {
      CostLedger::Phase s(l, "double");
      Elt den = o.inv(o.mul_small(y, 2));
      lam = o.mul(o.mul_small(x2, 3), den);
      x3 = o.sub(o.sqr(lam), o.mul_small(x, 2));
      y3 = o.sub(o.mul(lam, o.sub(x, x3)), y);
      c = o.sub(o.mul(lam, x), y);
      x3sq = o.sqr(x3);
    }
    absorb(lam, c, x3, x3sq, true);
    x = x3;
    y = y3;
    x2 = x3sq;
    if (digits[i] == 1) {
      {
        CostLedger::Phase s(l, "add");
        Elt den = o.inv(o.sub(x, Qt.x));
        lam = o.mul(o.sub(y, Qt.y), den);
        x3 = o.sub(o.sub(o.sqr(lam), x), Qt.x);
        y3 = o.sub(o.mul(lam, o.sub(x, x3)), y);
        c = o.sub(o.mul(lam, x), y);
        x3sq = o.sqr(x3);
      }
      absorb(lam, c, x3, x3sq, false);
      x = x3;
      y = y3;
      x2 = x3sq;
    }
  }
  return f ? *f : T.one(T.top());
}

Elt Pairing::miller_projective(const Point& Qt, const Point& P, CostLedger& l) const {
  const Tower& T = *ctx_.tower;
  TowerOps o(T, l);
  const PrimeField& F = T.field();
  const int m = ctx_.twist_level();
  const bool dtw = ctx_.twist == TwistType::D;
  const Fe& xP = P.x[0];
  const Fe& yP = P.y[0];
  const long b = ctx_.params.b;
  Fe xP2;
  {
    CostLedger::Phase s(l, "setup");
    xP2 = F.sqr(xP, l);
  }
  // 3 b' C with b' = b/g^2 (D) or b g^2 (M); free.
  auto three_b = [&](const Elt& C) {
    Elt t = dtw ? o.div_by_gen(o.div_by_gen(C)) : o.mul_by_gen(o.mul_by_gen(C));
    return o.mul_small(t, 3 * b);
  };
  Elt X = Qt.x, Y = Qt.y, Z = T.one(m);
  std::optional<Elt> f;

  // Line (l0 + lz z^k') times the conjugate of the vertical at (X3 : Z3).
  auto absorb = [&](const Elt& l0, const Elt& lz, const Elt& X3, const Elt& Z3, bool square_f) {
    Elt L0, L1, L2;
    {
      CostLedger::Phase s(l, "line");
      Elt zz = o.sqr(Z3), xx = o.sqr(X3), xz = o.mul(X3, Z3);
      Elt c0 = o.scale(zz, xP2);
      Elt xzp = o.scale(xz, xP);
      if (dtw) {
        Elt c1 = o.mul_by_gen(xx), c2 = xzp;
        Elt p00 = o.mul(l0, c0), p11 = o.mul(lz, c1);
        Elt k = o.sub(o.sub(o.mul(o.add(l0, lz), o.add(c0, c1)), p00), p11);
        Elt p02 = o.mul(l0, c2), p12 = o.mul(lz, c2);
        L0 = o.add(p00, o.mul_by_gen(p12));
        L1 = k;
        L2 = o.add(p02, p11);
      } else {
        Elt c1 = o.div_by_gen(xzp), c2 = o.div_by_gen(o.div_by_gen(xx));
        Elt p00 = o.mul(l0, c0), p22 = o.mul(lz, c2);
        Elt k = o.sub(o.sub(o.mul(o.add(l0, lz), o.add(c0, c2)), p00), p22);
        Elt p01 = o.mul(l0, c1), p21 = o.mul(lz, c1);
        L0 = o.add(p00, o.mul_by_gen(p21));
        L1 = o.add(p01, o.mul_by_gen(p22));
        L2 = k;
      }
    }
    CostLedger::Phase s(l, "accumulate");
    Elt Lf = join({L0, L1, L2});
    if (!f) {
      f = std::move(Lf);
      return;
    }
    if (square_f) f = o.sqr(*f);
    f = o.mul(*f, Lf);
  };
  auto place = [&](const Elt& scalar_part, const Elt& gen_part) {
    // D: scalar + gen*g ; M: scalar*g + gen
    return dtw ? o.add(scalar_part, o.mul_by_gen(gen_part)) : o.add(o.mul_by_gen(scalar_part), gen_part);
  };

  auto digits = binary_digits(ctx_.params.x);
  for (std::size_t i = 1; i < digits.size(); ++i) {
    Elt l0, lz, X3, Y3, Z3;
    {
      CostLedger::Phase s(l, "double");
      Elt A = o.sqr(X), B = o.sqr(Y), C = o.sqr(Z);
      Elt D = three_b(C);
      Elt E = o.sub(o.sub(o.sqr(o.add(X, Y)), A), B);
      Elt Fv = o.sub(o.sub(o.sqr(o.add(Y, Z)), B), C);
      Elt G = o.mul_small(D, 3);
      X3 = o.mul(E, o.sub(B, G));
      Y3 = o.sub(o.sqr(o.add(B, G)), o.mul_small(o.sqr(D), 12));
      Z3 = o.mul_small(o.mul(B, Fv), 4);
      l0 = place(o.scale(Fv, yP), o.sub(B, D));
      lz = o.neg(o.scale(o.mul_small(A, 3), xP));
    }
    absorb(l0, lz, X3, Z3, true);
    X = X3;
    Y = Y3;
    Z = Z3;
    if (digits[i] == 1) {
      {
        CostLedger::Phase s(l, "add");
        Elt th = o.sub(Y, o.mul(Qt.y, Z));
        Elt la = o.sub(X, o.mul(Qt.x, Z));
        Elt C = o.sqr(th), D = o.sqr(la);
        Elt E = o.mul(la, D), Fv = o.mul(Z, C), G = o.mul(X, D);
        Elt H = o.sub(o.add(E, Fv), o.mul_small(G, 2));
        X3 = o.mul(la, H);
        Y3 = o.sub(o.mul(th, o.sub(G, H)), o.mul(Y, E));
        Z3 = o.mul(Z, E);
        l0 = place(o.scale(la, yP), o.sub(o.mul(th, Qt.x), o.mul(la, Qt.y)));
        lz = o.neg(o.scale(th, xP));
      }
      absorb(l0, lz, X3, Z3, false);
      X = X3;
      Y = Y3;
      Z = Z3;
    }
  }
  return f ? *f : T.one(T.top());
}

Elt Pairing::easy_exp(const Elt& f, CostLedger& l) const {
  const Tower& T = *ctx_.tower;
  if (T.is_zero(f)) throw DivisionByZero();
  TowerOps o(T, l);
  CostLedger::Phase ph(l, "easy");
  Elt t, fi;
  {
    CostLedger::Phase s(l, "frobenius");
    t = o.frobenius(f, T.k() / 3);
  }
  {
    CostLedger::Phase s(l, "inverse");
    fi = o.inv(f);
  }
  CostLedger::Phase s(l, "mul");
  return o.mul(t, fi);
}

Elt Pairing::hard_exp(const Elt& A, CostLedger& l) const {
  TowerOps o(*ctx_.tower, l);
  CostLedger::Phase ph(l, "hard");
  return run_chain(chain_, o, A, ctx_.params.x);
}

Elt Pairing::project(const Elt& a, CostLedger& l) const {
  const auto& ps = ctx_.params;
  if (ps.r_family == ps.r) return a;
  TowerOps o(*ctx_.tower, l);
  CostLedger::Phase ph(l, "projection");
  return o.pow(a, ps.r_family / ps.r, true);
}

Elt Pairing::final_exp(const Elt& f, CostLedger& l) const {
  CostLedger::Phase ph(l, "final_exp");
  Elt A = easy_exp(f, l);
  return project(hard_exp(A, l), l);
}

Elt Pairing::optimal_ate(const Point& Qt, const Point& P, CostLedger& l) const {
  return final_exp(miller_loop(Qt, P, l), l);
}

Elt Pairing::optimal_ate(const Point& Qt, const Point& P) const {
  CostLedger l;
  return optimal_ate(Qt, P, l);
}

mpz_class Pairing::hard_target() const {
  const auto& ps = ctx_.params;
  mpz_class pm;
  mpz_pow_ui(pm.get_mpz_t(), ps.p.get_mpz_t(), static_cast<unsigned long>(ps.k / 3));
  mpz_class phi = pm * pm + pm + 1;
  if (phi % ps.r_family != 0) throw InternalBreach("r(x) does not divide the cyclotomic factor");
  return phi / ps.r_family;
}

mpz_class Pairing::hard_exponent() const { return chain_exponent(chain_, ctx_.params.x, ctx_.params.p); }

mpz_class Pairing::final_exponent() const {
  const auto& ps = ctx_.params;
  mpz_class pm;
  mpz_pow_ui(pm.get_mpz_t(), ps.p.get_mpz_t(), static_cast<unsigned long>(ps.k / 3));
  return (pm - 1) * hard_exponent() * (ps.r_family / ps.r);
}

bool verify_optimal_vector(const ParamSet& ps) {
  if (ps.r <= 0) return false;
  mpz_class diff = ps.x - ps.p;
  if (diff % ps.r != 0) return false;
  mpz_class mm = diff / ps.r;
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), ps.p.get_mpz_t(), static_cast<unsigned long>(ps.k));
  // sum i c_i p^(i-1) = 1 * (-1)
  mpz_class lhs = mm * ps.k % ps.r * (pk % ps.r) % ps.r;
  mpz_class rhs = -((pk - 1) / ps.r % ps.r);
  auto norm = [&](mpz_class v) {
    v %= ps.r;
    if (v < 0) v += ps.r;
    return v;
  };
  return norm(lhs) != norm(rhs);
}

std::vector<Relation> hard_part_relations(const ParamSet& ps) {
  std::vector<Relation> out;
  const mpz_class& x = ps.x;
  const mpz_class& p = ps.p;
  auto pw = [](const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
  };
  mpz_class pm = pw(p, static_cast<unsigned long>(ps.k / 3));
  mpz_class phi = pm * pm + pm + 1;
  bool integral = phi % ps.r_family == 0;
  out.push_back({"r(x) divides p^(2k/3) + p^(k/3) + 1", integral});
  if (!integral) return out;
  mpz_class d = phi / ps.r_family;
  auto weighted = [&](const std::vector<mpz_class>& k) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * pw(p, i);
    return s;
  };
  mpz_class x2 = x * x, x3 = x2 * x;
  if (ps.k == 9) {
    std::vector<mpz_class> k(6);
    k[0] = -x2 * x2 + 2 * x3 - x2;
    k[1] = -x3 + 2 * x2 - x;
    k[2] = -x2 + 2 * x - 1;
    k[3] = pw(x, 7) - 2 * pw(x, 6) + pw(x, 5) + 3;
    k[4] = pw(x, 6) - 2 * pw(x, 5) + pw(x, 4);
    k[5] = pw(x, 5) - 2 * pw(x, 4) + x3;
    out.push_back({"k2 = -(x-1)^2", k[2] == -(x - 1) * (x - 1)});
    out.push_back({"k1 = x k2", k[1] == x * k[2]});
    out.push_back({"k0 = x k1", k[0] == x * k[1]});
    out.push_back({"k5 = -x k0", k[5] == -x * k[0]});
    out.push_back({"k4 = x k5", k[4] == x * k[5]});
    out.push_back({"k3 = x k4 + 3", k[3] == x * k[4] + 3});
    out.push_back({"sum k_i p^i = x^3 d", weighted(k) == x3 * d});
  } else if (ps.k == 15) {
    std::vector<mpz_class> k(10);
    k[0] = -pw(x, 6) + pw(x, 5) + x3 - x2;
    k[1] = -pw(x, 5) + pw(x, 4) + x2 - x;
    k[2] = -pw(x, 4) + x3 + x - 1;
    k[3] = pw(x, 11) - 2 * pw(x, 10) + pw(x, 9) + pw(x, 6) - 2 * pw(x, 5) + pw(x, 4) - x3 + x2 + x + 2;
    k[4] = pw(x, 11) - pw(x, 10) - pw(x, 9) + pw(x, 8) + pw(x, 6) - pw(x, 5) - pw(x, 4) + x3 - x2 + 2 * x + 2;
    k[5] = pw(x, 11) - pw(x, 10) - pw(x, 8) + pw(x, 7) + 3;
    k[6] = pw(x, 10) - pw(x, 9) - pw(x, 7) + pw(x, 6);
    k[7] = pw(x, 9) - pw(x, 8) - pw(x, 6) + pw(x, 5);
    k[8] = pw(x, 8) - pw(x, 7) - pw(x, 5) + pw(x, 4);
    k[9] = pw(x, 7) - pw(x, 6) - pw(x, 4) + x3;
    mpz_class M = k[2] + k[5] + k[8];
    out.push_back({"k2 = -(x-1)^2 (x^2+x+1)", k[2] == -(x - 1) * (x - 1) * (x2 + x + 1)});
    out.push_back({"k1 = x k2", k[1] == x * k[2]});
    out.push_back({"k0 = x k1", k[0] == x * k[1]});
    out.push_back({"k9 = -x k0", k[9] == -x * k[0]});
    out.push_back({"k8 = x k9", k[8] == x * k[9]});
    out.push_back({"k7 = x k8", k[7] == x * k[8]});
    out.push_back({"k6 = x k7", k[6] == x * k[7]});
    out.push_back({"k5 = x k6 + 3", k[5] == x * k[6] + 3});
    out.push_back({"k4 = M - (k1 + k7)", k[4] == M - (k[1] + k[7])});
    out.push_back({"k3 = M - (k0 + k6 + k9)", k[3] == M - (k[0] + k[6] + k[9])});
    out.push_back({"sum k_i p^i = 3 x^3 d", weighted(k) == 3 * x3 * d});
  }
  const ChainProgram& prog = builtin_chain(ps.k);
  mpz_class e = chain_exponent(prog, x, p);
  mpz_class target = prog.scale * pw(x, static_cast<unsigned long>(prog.x_power)) * d;
  out.push_back({"chain exponent = multiplier * d", e == target});
  bool multiple = e % d == 0 && e != 0;
  out.push_back({"chain exponent is a multiple of d", multiple});
  out.push_back({"r does not divide d'/d", multiple && (e / d) % ps.r != 0});
  return out;
}

}  // namespace oddpair
