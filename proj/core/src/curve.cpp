// SPDX-License-Identifier: Apache-2.0
#include "oddpair/curve.hpp"

#include "oddpair/errors.hpp"

namespace oddpair {

namespace {

struct Jacobian {
  Elt X, Y, Z;
  bool inf = false;
};

mpz_class field_order(const Tower& t, int level) {
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), t.field().modulus().get_mpz_t(), static_cast<unsigned long>(t.dim(level)));
  return q;
}

Jacobian jac_dbl(const TowerOps& o, const Jacobian& P) {
  if (P.inf || o.tower().is_zero(P.Y)) return {{}, {}, {}, true};
  Elt A = o.sqr(P.X), B = o.sqr(P.Y), C = o.sqr(B);
  Elt D = o.mul_small(o.sub(o.sub(o.sqr(o.add(P.X, B)), A), C), 2);
  Elt E = o.mul_small(A, 3);
  Elt X3 = o.sub(o.sqr(E), o.mul_small(D, 2));
  Elt Y3 = o.sub(o.mul(E, o.sub(D, X3)), o.mul_small(C, 8));
  Elt Z3 = o.mul_small(o.mul(P.Y, P.Z), 2);
  return {X3, Y3, Z3, false};
}

Jacobian jac_add_affine(const TowerOps& o, const Jacobian& P, const Point& Q) {
  if (Q.inf) return P;
  if (P.inf) return {Q.x, Q.y, o.tower().one(o.tower().level_of(Q.x.size())), false};
  Elt z1z1 = o.sqr(P.Z);
  Elt u2 = o.mul(Q.x, z1z1);
  Elt s2 = o.mul(Q.y, o.mul(P.Z, z1z1));
  Elt h = o.sub(u2, P.X), rr = o.sub(s2, P.Y);
  if (o.tower().is_zero(h)) {
    if (o.tower().is_zero(rr)) return jac_dbl(o, P);
    return {{}, {}, {}, true};
  }
  Elt hh = o.sqr(h), hhh = o.mul(h, hh), v = o.mul(P.X, hh);
  Elt X3 = o.sub(o.sub(o.sqr(rr), hhh), o.mul_small(v, 2));
  Elt Y3 = o.sub(o.mul(rr, o.sub(v, X3)), o.mul(P.Y, hhh));
  return {X3, Y3, o.mul(P.Z, h), false};
}

Point jac_normalize(const TowerOps& o, const Jacobian& P) {
  if (P.inf) return Point::infinity();
  Elt zi = o.inv(P.Z), zi2 = o.sqr(zi);
  return {o.mul(P.X, zi2), o.mul(P.Y, o.mul(zi, zi2)), false};
}

}  // namespace

bool CurveOps::on_curve(const Point& P) const {
  if (P.inf) return true;
  if (P.x.size() != c_.b.size() || P.y.size() != c_.b.size()) return false;
  Elt lhs = ops_.sqr(P.y);
  Elt rhs = ops_.add(ops_.mul(ops_.sqr(P.x), P.x), c_.b);
  return lhs == rhs;
}

bool CurveOps::on_curve(const ProjectivePoint& P) const {
  // Y^2 Z = X^3 + b Z^3
  Elt lhs = ops_.mul(ops_.sqr(P.Y), P.Z);
  Elt rhs = ops_.add(ops_.mul(ops_.sqr(P.X), P.X), ops_.mul(c_.b, ops_.mul(ops_.sqr(P.Z), P.Z)));
  return lhs == rhs;
}

Point CurveOps::neg(const Point& P) const {
  if (P.inf) return P;
  return {P.x, ops_.neg(P.y), false};
}

Point CurveOps::dbl(const Point& P) const {
  if (P.inf || ops_.tower().is_zero(P.y)) return Point::infinity();
  Elt lam = ops_.mul(ops_.mul_small(ops_.sqr(P.x), 3), ops_.inv(ops_.mul_small(P.y, 2)));
  Elt x3 = ops_.sub(ops_.sqr(lam), ops_.mul_small(P.x, 2));
  Elt y3 = ops_.sub(ops_.mul(lam, ops_.sub(P.x, x3)), P.y);
  return {x3, y3, false};
}

Point CurveOps::add(const Point& P, const Point& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x.size() != Q.x.size()) throw FieldMismatch("points on different levels");
  if (P.x == Q.x) {
    if (P.y == Q.y) return dbl(P);
    return Point::infinity();
  }
  Elt lam = ops_.mul(ops_.sub(Q.y, P.y), ops_.inv(ops_.sub(Q.x, P.x)));
  Elt x3 = ops_.sub(ops_.sub(ops_.sqr(lam), P.x), Q.x);
  Elt y3 = ops_.sub(ops_.mul(lam, ops_.sub(P.x, x3)), P.y);
  return {x3, y3, false};
}

Point CurveOps::mul(const mpz_class& n, const Point& P) const {
  if (n < 0) return mul(-n, neg(P));
  if (n == 0 || P.inf) return Point::infinity();
  Jacobian R{{}, {}, {}, true};
  for (int bit : binary_digits(n)) {
    R = jac_dbl(ops_, R);
    if (bit) R = jac_add_affine(ops_, R, P);
  }
  return jac_normalize(ops_, R);
}

Point CurveOps::mul_affine(const mpz_class& n, const Point& P) const {
  if (n < 0) return mul_affine(-n, neg(P));
  Point R = Point::infinity();
  for (int bit : binary_digits(n)) {
    R = dbl(R);
    if (bit) R = add(R, P);
  }
  return R;
}

Point CurveOps::normalize(const ProjectivePoint& P) const {
  if (ops_.tower().is_zero(P.Z)) return Point::infinity();
  Elt zi = ops_.inv(P.Z);
  return {ops_.mul(P.X, zi), ops_.mul(P.Y, zi), false};
}

std::optional<Point> CurveOps::random_point(std::mt19937_64& rng, int tries) const {
  const Tower& t = ops_.tower();
  for (int i = 0; i < tries; ++i) {
    Elt x = t.random(c_.level, rng);
    Elt rhs = ops_.add(ops_.mul(ops_.sqr(x), x), c_.b);
    auto y = sqrt_ext(ops_, rhs);
    if (!y) continue;
    if (rng() & 1) *y = ops_.neg(*y);
    return Point{x, *y, false};
  }
  return std::nullopt;
}

bool is_square_ext(const TowerOps& ops, const Elt& a) {
  const Tower& t = ops.tower();
  if (t.is_zero(a)) return true;
  mpz_class q = field_order(t, t.level_of(a.size()));
  return t.is_one(ops.pow(a, (q - 1) / 2));
}

std::optional<Elt> sqrt_ext(const TowerOps& ops, const Elt& a) {
  const Tower& t = ops.tower();
  int level = t.level_of(a.size());
  if (level == 0) {
    auto s = t.field().sqrt(a[0]);
    if (!s) return std::nullopt;
    return Elt{*s};
  }
  if (t.is_zero(a)) return a;
  mpz_class q = field_order(t, level);
  if (!t.is_one(ops.pow(a, (q - 1) / 2))) return std::nullopt;
  mpz_class Q = q - 1;
  unsigned long s = mpz_scan1(Q.get_mpz_t(), 0);
  Q >>= s;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  Elt z;
  do {
    z = t.random(level, rng);
  } while (t.is_zero(z) || t.is_one(ops.pow(z, (q - 1) / 2)));
  unsigned long M = s;
  Elt c = ops.pow(z, Q), tt = ops.pow(a, Q), R = ops.pow(a, (Q + 1) / 2);
  while (!t.is_one(tt)) {
    unsigned long i = 0;
    Elt u = tt;
    while (!t.is_one(u)) {
      u = ops.sqr(u);
      if (++i == M) return std::nullopt;
    }
    Elt b = c;
    for (unsigned long j = 0; j + i + 1 < M; ++j) b = ops.sqr(b);
    M = i;
    c = ops.sqr(b);
    tt = ops.mul(tt, c);
    R = ops.mul(R, b);
  }
  return R;
}

std::string to_string(TwistType t) { return t == TwistType::D ? "D" : "M"; }

std::vector<mpz_class> twist_order_candidates(const mpz_class& p, const mpz_class& t, int m) {
  mpz_class prev = 2, cur = t;
  for (int i = 1; i < m; ++i) {
    mpz_class next = t * cur - p * prev;
    prev = cur;
    cur = next;
  }
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(m));
  std::vector<mpz_class> out{q + 1 - cur, q + 1 + cur};
  mpz_class f2 = 4 * q - cur * cur;
  if (f2 > 0 && f2 % 3 == 0) {
    f2 /= 3;
    if (mpz_perfect_square_p(f2.get_mpz_t())) {
      mpz_class f;
      mpz_sqrt(f.get_mpz_t(), f2.get_mpz_t());
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          mpz_class u = s1 * cur + s2 * 3 * f;
          if (u % 2 == 0) out.push_back(q + 1 - u / 2);
        }
    }
  }
  return out;
}

bool annihilates(const CurveOps& co, const mpz_class& n, std::mt19937_64& rng, int samples) {
  for (int i = 0; i < samples; ++i) {
    auto P = co.random_point(rng);
    if (!P || !co.mul(n, *P).inf) return false;
  }
  return true;
}

namespace {

Elt twist_coefficient(const TowerOps& o, const Elt& b, TwistType type) {
  return type == TwistType::D ? o.div_by_gen(o.div_by_gen(b)) : o.mul_by_gen(o.mul_by_gen(b));
}

}  // namespace

namespace {

// [h]P of exact order r for a random P, or nullopt when the first few
// samples give none (the group order is then not h r).
std::optional<Point> order_r_point(const CurveOps& co, const mpz_class& h, const mpz_class& r,
                                   std::mt19937_64& rng) {
  for (int i = 0; i < 4; ++i) {
    auto P = co.random_point(rng);
    if (!P) return std::nullopt;
    Point G = co.mul(h, *P);
    if (G.inf) continue;
    if (!co.mul(r, G).inf) return std::nullopt;
    return G;
  }
  return std::nullopt;
}

}  // namespace

std::unique_ptr<PairingContext> make_context(const ParamSet& ps, std::uint64_t seed) {
  auto ctx = std::make_unique<PairingContext>();
  ctx->params = ps;
  if (!is_probable_prime(ps.p)) throw InvalidParameters(ps.label + ": p is not prime");
  if (!is_probable_prime(ps.r)) throw InvalidParameters(ps.label + ": r is not prime");
  ctx->field = std::make_shared<const PrimeField>(ps.p);
  ctx->tower = std::make_unique<Tower>(ctx->field, ps.k, ps.residue);
  const Tower& T = *ctx->tower;
  const PrimeField& F = *ctx->field;
  CostLedger scratch;
  TowerOps o(T, scratch);
  std::mt19937_64 rng(seed);

  ctx->n1 = ps.p + 1 - ps.t;
  if (ctx->n1 % ps.r != 0) throw InvalidParameters(ps.label + ": r does not divide p + 1 - t");
  ctx->h1 = ctx->n1 / ps.r;
  ctx->E = Curve{&T, 0, Elt{F.from_int(ps.b)}};
  CurveOps e1(ctx->E, o);
  if (!annihilates(e1, ctx->n1, rng, 4))
    throw InvalidParameters(ps.label + ": y^2 = x^3 + b does not have p + 1 - t points");
  auto g1 = order_r_point(e1, ctx->h1, ps.r, rng);
  if (!g1) throw InvalidParameters(ps.label + ": could not find a point of order r on E");
  ctx->g1 = *g1;
  int m = T.top() - 1;
  ctx->Ek = Curve{&T, T.top(), T.embed(ctx->E.b, T.top())};

  // The first two candidates are E itself and its quadratic twist.
  auto all = twist_order_candidates(ps.p, ps.t, T.dim(m));
  std::vector<mpz_class> cands;
  for (std::size_t i = 2; i < all.size(); ++i)
    if (all[i] % ps.r == 0) cands.push_back(all[i]);
  Elt bm = T.embed(ctx->E.b, m);
  for (TwistType type : {TwistType::M, TwistType::D}) {
    Curve Et{&T, m, twist_coefficient(o, bm, type)};
    CurveOps co(Et, o);
    for (const auto& n : cands) {
      auto g2 = order_r_point(co, n / ps.r, ps.r, rng);
      if (!g2) continue;
      ctx->twist = type;
      ctx->Et = Et;
      ctx->n2 = n;
      ctx->h2 = n / ps.r;
      ctx->g2 = *g2;
      return ctx;
    }
  }
  throw InvalidParameters(ps.label + ": no cubic twist has order divisible by r");
}

Point untwist(const PairingContext& ctx, const Point& Qt) {
  if (Qt.inf) return Qt;
  const Tower& T = *ctx.tower;
  CostLedger scratch;
  TowerOps o(T, scratch);
  Elt zero = T.zero(T.top() - 1);
  if (ctx.twist == TwistType::D) return {join({zero, zero, Qt.x}), join({o.mul_by_gen(Qt.y), zero, zero}), false};
  return {join({zero, o.div_by_gen(Qt.x), zero}), join({o.div_by_gen(Qt.y), zero, zero}), false};
}

Point embed_g1(const PairingContext& ctx, const Point& P) {
  if (P.inf) return P;
  return {ctx.tower->embed(P.x, ctx.tower->top()), ctx.tower->embed(P.y, ctx.tower->top()), false};
}

Point frobenius_point(const PairingContext& ctx, const Point& P) {
  if (P.inf) return P;
  CostLedger scratch;
  TowerOps o(*ctx.tower, scratch);
  return {o.frobenius(P.x, 1), o.frobenius(P.y, 1), false};
}

namespace {

Point random_multiple(const PairingContext& ctx, const Curve& c, const Point& g, std::mt19937_64& rng) {
  CostLedger scratch;
  TowerOps o(*ctx.tower, scratch);
  mpz_class a = random_below(ctx.params.r - 1, rng) + 1;
  return CurveOps(c, o).mul(a, g);
}

}  // namespace

Point sample_g1(const PairingContext& ctx, std::mt19937_64& rng) { return random_multiple(ctx, ctx.E, ctx.g1, rng); }

Point sample_g2(const PairingContext& ctx, std::mt19937_64& rng) { return random_multiple(ctx, ctx.Et, ctx.g2, rng); }

std::string point_to_string(const Tower& t, const Point& P) {
  if (P.inf) return "inf";
  return std::to_string(t.dim(t.level_of(P.x.size()))) + ":" + t.to_hex(P.x) + ":" + t.to_hex(P.y);
}

Point point_from_string(const Tower& t, const std::string& s) {
  if (s == "inf") return Point::infinity();
  auto a = s.find(':');
  auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos) throw InvalidPoint("expected level:x_hex:y_hex");
  int dim = 0;
  try {
    dim = std::stoi(s.substr(0, a));
  } catch (const std::exception&) {
    throw InvalidPoint("bad level in point");
  }
  int level = -1;
  for (int l = 0; l <= t.top(); ++l)
    if (t.dim(l) == dim) level = l;
  if (level < 0) throw InvalidPoint("level " + std::to_string(dim) + " is not in the tower");
  try {
    return {t.from_hex(s.substr(a + 1, b - a - 1), level), t.from_hex(s.substr(b + 1), level), false};
  } catch (const FieldMismatch& e) {
    throw InvalidPoint(e.what());
  }
}

}  // namespace oddpair
