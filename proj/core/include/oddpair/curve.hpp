// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oddpair/params.hpp"
#include "oddpair/tower.hpp"

namespace oddpair {

// y^2 = x^3 + b over tower level `level`.
struct Curve {
  const Tower* tower = nullptr;
  int level = 0;
  Elt b;
};

struct Point {
  Elt x, y;
  bool inf = false;

  static Point infinity() { return {{}, {}, true}; }
  friend bool operator==(const Point&, const Point&) = default;
};

// Homogeneous projective point (X : Y : Z) with x = X/Z, y = Y/Z.
struct ProjectivePoint {
  Elt X, Y, Z;
};

// Group law and scalar multiplication. Costs go to the ledger of `ops`,
// so callers that do not want them counted pass a scratch ledger.
class CurveOps {
 public:
  CurveOps(const Curve& c, const TowerOps& ops) : c_(c), ops_(ops) {}

  const Curve& curve() const { return c_; }

  bool on_curve(const Point& P) const;
  Point neg(const Point& P) const;
  Point add(const Point& P, const Point& Q) const;
  Point dbl(const Point& P) const;
  // Double-and-add in Jacobian coordinates; negative n negates.
  Point mul(const mpz_class& n, const Point& P) const;
  // Affine double-and-add, used to cross-check `mul`.
  Point mul_affine(const mpz_class& n, const Point& P) const;
  Point normalize(const ProjectivePoint& P) const;
  bool on_curve(const ProjectivePoint& P) const;

  // Random point with any order; nullopt after `tries` failed x values.
  std::optional<Point> random_point(std::mt19937_64& rng, int tries = 200) const;

 private:
  const Curve& c_;
  const TowerOps& ops_;
};

// Square root in F_{p^m} for the element's level (Tonelli-Shanks).
std::optional<Elt> sqrt_ext(const TowerOps& ops, const Elt& a);
bool is_square_ext(const TowerOps& ops, const Elt& a);

// The twist used for G2. With z the top tower generator and g = z^3:
//   D:  E': y^2 = x^3 + b/g^2,  psi(x', y') = (x' z^2, y' g)
//   M:  E': y^2 = x^3 + b g^2,  psi(x', y') = (x'/z^2, y'/g)
enum class TwistType { D, M };
std::string to_string(TwistType t);

// Candidate orders of the cubic and sextic twists of E over F_{p^m}:
// q + 1 - u for u in {t_m, -t_m, (+-t_m +- 3f)/2} with 4q - t_m^2 = 3f^2.
std::vector<mpz_class> twist_order_candidates(const mpz_class& p, const mpz_class& t, int m);

// Everything needed to pair on one parameter set: field, tower, E, the
// correct twist with its order, and cofactors.
struct PairingContext {
  ParamSet params;
  std::shared_ptr<const PrimeField> field;
  std::unique_ptr<Tower> tower;
  Curve E;        // over F_p
  Curve Et;       // twist over F_{p^(k/3)}
  Curve Ek;       // E over F_{p^k}
  TwistType twist = TwistType::D;
  mpz_class n1, n2, h1, h2;
  Point g1, g2;  // fixed points of order r on E and on the twist

  int twist_level() const { return tower->top() - 1; }
};

// Builds the context; throws InvalidParameters when p is not prime, the
// residue is unusable or no twist order is annihilating. Deterministic for
// a fixed seed.
std::unique_ptr<PairingContext> make_context(const ParamSet& ps, std::uint64_t seed = 1);

// True when [n]P is the identity for `samples` random points.
bool annihilates(const CurveOps& co, const mpz_class& n, std::mt19937_64& rng, int samples);

Point untwist(const PairingContext& ctx, const Point& Qt);
Point embed_g1(const PairingContext& ctx, const Point& P);
// Applies the p-power Frobenius coordinate-wise to a point over F_{p^k}.
Point frobenius_point(const PairingContext& ctx, const Point& P);

// Random multiples [a]g with 0 < a < r.
Point sample_g1(const PairingContext& ctx, std::mt19937_64& rng);
Point sample_g2(const PairingContext& ctx, std::mt19937_64& rng);

// "level:x_hex:y_hex", or "inf".
std::string point_to_string(const Tower& t, const Point& P);
Point point_from_string(const Tower& t, const std::string& s);

}  // namespace oddpair
