#pragma once

// Cantor arithmetic on the Jacobian of a genus-2 curve, used as an
// independent check of rational representations of [m].

#include <array>

#include "isogeny2/curves.hpp"

namespace isogeny2 {

// a monic, deg a <= 2, deg b < deg a, a | b^2 - f. Identity is (1, 0).
struct MumfordDivisor {
  Poly a, b;
  bool operator==(const MumfordDivisor& o) const { return a == o.a && b == o.b; }
};

// w^2 = f(t), deg f = 5, obtained from y^2 = E(x) by sending the root e of E
// to infinity: t = 1/(x - e), w = y/(x - e)^3.
class JacobianOracle {
 public:
  // Looks for a root of E in the field of C, then in one quadratic
  // extension. Throws NonGenericPosition if neither has one.
  JacobianOracle(const CurveModel& C, std::mt19937_64& rng);
  JacobianOracle(const CurveModel& C, const Fe& e);

  const FieldPtr& field() const { return K_; }
  const Poly& f() const { return f_; }
  const Fe& root() const { return e_; }

  MumfordDivisor identity() const;
  // [R - infinity] for an affine point R = (x, y) of the original model, x != e.
  MumfordDivisor point(const Fe& x, const Fe& y) const;
  MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
  MumfordDivisor neg(const MumfordDivisor& a) const;
  MumfordDivisor mul(int64_t m, const MumfordDivisor& a) const;

 private:
  MumfordDivisor reduce(Poly a, Poly b) const;
  FieldPtr K_;
  Fe e_;
  Poly f_;
};

// (x1 + x2, x1 x2, y1 y2, (y2 - y1)/(x2 - x1)) for m [Q - P], in the original
// coordinates. Throws NonGenericPosition when the result is not two distinct
// affine points.
std::array<Fe, 4> oracle_rational_rep(const JacobianOracle& J, const CurvePoint& P, int64_t m,
                                      const CurvePoint& Q);

}  // namespace isogeny2
