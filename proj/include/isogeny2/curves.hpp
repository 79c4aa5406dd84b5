#pragma once

// Hyperelliptic models y^2 = E(x), deg E in {5, 6}.

#include <array>
#include <optional>
#include <random>

#include "isogeny2/covariants.hpp"
#include "isogeny2/matrix.hpp"
#include "isogeny2/series.hpp"

namespace isogeny2 {

class CurveModel {
 public:
  CurveModel() = default;
  // Throws SingularCurve when the discriminant vanishes or deg E < 5.
  explicit CurveModel(BinaryForm sextic);
  static CurveModel from_ints(const FieldPtr& F, const std::vector<int64_t>& a);

  const FieldPtr& field() const { return E_.F; }
  const BinaryForm& sextic() const { return E_; }
  Poly poly() const { return Poly(E_.F, E_.a); }
  Fe eval(const Fe& x, const Field* L = nullptr) const { return poly().eval(x, L); }
  bool contains(const Fe& x, const Fe& y, const Field* L = nullptr) const;
  CurveModel lift(const FieldPtr& L) const;
  std::vector<uint64_t> flat_coeffs() const;

 private:
  BinaryForm E_;
};

struct CurvePoint {
  Fe u, v;
  bool infinity = false;
};

struct Gl2Result {
  CurveModel curve;
  Mat tangent_factor;  // r^t: new tangent matrix = old one times this
};

// det^-2 Sym^6(r) applied to C. The isomorphism to the old model is
// x = (a x' + c)/(b x' + d), y = det(r) y'/(b x' + d)^3.
Gl2Result gl2_transform(const CurveModel& C, const Mat& r);

// r = [[l^2, 0], [l u0, l]] with l = 1/E'(u0): moves the Weierstrass point
// (u0, 0) to (0, 0) and makes the new linear coefficient 1.
Mat weierstrass_to_origin(const CurveModel& C, const Fe& u0);

// A model with the given Streng invariants (j3 != 0).
CurveModel mestre_reconstruct(const FieldPtr& F, const std::array<Fe, 3>& j,
                              std::mt19937_64& rng);

enum class ChartKind { Generic, Weierstrass };

struct LocalExpansion {
  ChartKind kind = ChartKind::Generic;
  CurvePoint P;
  Series u, v, D;  // D = (du/dz)/v
  Fe branch;       // v(0) for generic points, (v/z)(0) at Weierstrass points
};

// P must lie in the field of C or in `L` if given.
LocalExpansion local_expansion(const CurveModel& C, const CurvePoint& P, size_t prec,
                               const FieldPtr& L = nullptr);

struct BasePoint {
  CurvePoint P, Q;
  bool weierstrass = false;
  FieldPtr field;  // field over which P, Q and the tangent matrix live
};

// Q = (x0, y0) with x0 = (m11 u0 + m12)/(m21 u0 + m22) and y0 the canonical
// root of E_C'(x0) != 0. Weierstrass points of C are preferred, `prefer_u`
// first when it is one. The field of dphi may be extended once to reach a
// square y0.
BasePoint find_base_point(const CurveModel& C, const Mat& dphi, const CurveModel& Cp,
                          std::mt19937_64& rng, bool allow_weierstrass = true,
                          const std::optional<Fe>& prefer_u = {});

}  // namespace isogeny2
