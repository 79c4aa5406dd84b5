#pragma once

// Power-series solution of the differential system satisfied by the local
// lift (x1, x2, y1, y2) of an isogeny at a base point.

#include <array>

#include "isogeny2/curves.hpp"

namespace isogeny2 {

using SeriesVec = std::array<Series, 2>;
using SeriesMat = std::array<std::array<Series, 2>, 2>;

// Everything the lift depends on, expanded once to the target precision.
struct LiftProblem {
  FieldPtr L;
  CurveModel Cp;          // over L
  Poly Ep, dEp;           // E_C' and its derivative over L
  Mat dphi;               // over L
  LocalExpansion chart;   // at P, precision nu
  CurvePoint Q;           // (x0, y0), y0 != 0
  SeriesVec rhs;          // (m11 U + m12) D, (m21 U + m22) D
  size_t nu = 0;
};

LiftProblem make_lift_problem(const CurveModel& C, const CurveModel& Cp, const Mat& dphi,
                              const BasePoint& bp, size_t nu);

struct LocalLift {
  Series x1, x2, y1, y2;  // all of precision `prec`
  size_t prec = 0;
};

// x_i = x0 + v_i z with y1(0) = y0, y2(0) = -y0. Throws EqualRoots when the
// constant term of the second right-hand side vanishes.
LocalLift initialize_lift(const LiftProblem& pb);

enum class OdeMethod { Naive, DivideAndConquer };

// z theta' + (A + kappa) theta = B + O(z^d). Throws NonInvertibleLeading.
SeriesVec naive_ode_solve(const SeriesMat& A, const SeriesVec& B, int64_t kappa, size_t d);
SeriesVec dac_ode_solve(const SeriesMat& A, const SeriesVec& B, int64_t kappa, size_t d);

// Newton doubling up to pb.nu. Throws ResidualNonzero, EqualRoots,
// NonInvertibleLeading.
LocalLift newton_lift(const LiftProblem& pb, LocalLift lift,
                      OdeMethod method = OdeMethod::DivideAndConquer);

// Convenience: initialize and lift.
LocalLift solve_lift(const LiftProblem& pb, OdeMethod method = OdeMethod::DivideAndConquer);

struct LiftResiduals {
  size_t ode1, ode2;    // valuations of the two first-order equations
  size_t curve1, curve2;  // valuations of y_i^2 - E_C'(x_i)
};
LiftResiduals lift_residuals(const LiftProblem& pb, const LocalLift& lift);

}  // namespace isogeny2
