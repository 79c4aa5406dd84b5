#pragma once

// Real multiplication by the maximal order of Q(sqrt 5): Gundlach invariants,
// the Hilbert tangent data D_tG and Hilbert-normalized curve models.

#include <array>
#include <optional>

#include "isogeny2/curves.hpp"
#include "isogeny2/matrix.hpp"

namespace isogeny2 {

struct GundlachPoint {
  Fe g1, g2;
};

// Igusa-Clebsch absolute invariants (I2^5/I10, I2^3 I4/I10, I2^2 I6/I10) of
// the pullback, in terms of A = 3 g2^2/g1 - 2.
std::array<Fe, 3> gundlach_to_h(const FieldPtr& F, const GundlachPoint& g);
// Streng invariants; throws ZeroG1, DegenerateGundlach (A = 0).
std::array<Fe, 3> gundlach_to_igusa(const FieldPtr& F, const GundlachPoint& g);
// Throws NotOnHumbert, NonSquare, DegenerateGundlach.
GundlachPoint igusa_to_gundlach(const FieldPtr& F, const std::array<Fe, 3>& j);

// d(j1, j2, j3)/d(g1, g2), a 3x2 matrix.
Mat gundlach_jacobian(const FieldPtr& F, const GundlachPoint& g);

// Element of F playing the role of sqrt 5; default is the canonical root.
Fe sqrt5(const FieldPtr& F);
// beta = (trace + b sqrt5)/2 and its conjugate, b > 0 with b^2 = (trace^2 - 4 norm)/5.
std::pair<Fe, Fe> beta_pair(const FieldPtr& F, int64_t norm, int64_t trace, const Fe& s5);

struct DtGResult {
  Mat dtg;        // 2x2
  Mat residual;   // 1x2, the unused chain-rule row; zero on the Humbert surface
  GundlachPoint g;
};

// Solves (dJ/dG) X = D_tauJ(C) T on rows (j1, j3), checks row j2, and returns
// X Diag(1/(5 + sqrt5), 1/(5 - sqrt5)). Throws InconsistentChainRule or
// SingularJacobian; the unchecked variant reports the residual instead.
Mat dtG_matrix(const CurveModel& C, const Fe& s5, const std::optional<GundlachPoint>& g = {});
DtGResult dtG_matrix_unchecked(const CurveModel& C, const Fe& s5,
                               const std::optional<GundlachPoint>& g = {});

// Model y^2 = b0 + b1 x + b3 x^3 + b5 x^5 + b6 x^6 with b1 given, from the
// pullback identities of f_{8,6} under G2 = 1, F10 = 1/g1, F6 = g2/g1. The
// result may live over a quadratic extension.
CurveModel hilb_curve_reconstruct(const FieldPtr& F, const GundlachPoint& g,
                                  std::mt19937_64& rng, int64_t b1 = 1);

// Residuals of the four pullback identities at a given curve model (zero for
// a Hilbert-normalized model of g up to the scaling fixed by b3).
std::array<Fe, 4> pullback_residuals(const CurveModel& C, const GundlachPoint& g);

}  // namespace isogeny2
