#pragma once

// Rational representation (s, p, q, r) of an isogeny at a base point, from
// the local lift.

#include <string>

#include "isogeny2/solver.hpp"

namespace isogeny2 {

// a(u) + v b(u), with v^2 = E(u).
struct CurvePoly {
  Poly a, b;
};

// a(u) + v b(u) for fractions a, b.
struct CurveFunction {
  RationalFraction even, odd;
  std::optional<Fe> eval(const Fe& u, const Fe& v, const Field* L = nullptr) const;
  Series eval(const Series& u, const Series& v) const;  // denominators must be units
};

CurvePoly cp_mul(const CurvePoly& x, const CurvePoly& y, const Poly& E);
CurvePoly cp_conj(const CurvePoly& x);
Poly cp_norm(const CurvePoly& x, const Poly& E);  // a^2 - E b^2
// Square root in k[u] + v k[u]; empty if none.
std::optional<CurvePoly> cp_sqrt(const CurvePoly& x, const Poly& E);

struct DegreeBounds {
  int ds = 0, dp = 0, dq = 0, dr = 0;  // degrees of s, p, q, r as maps to P^1
};
DegreeBounds degree_bounds_siegel(int ell);
DegreeBounds degree_bounds_hilbert(int64_t trace);
DegreeBounds degree_bounds_endomorphism(int m);

// 2 ds + 7 at Weierstrass base points (8 ell + 7, 4 Tr(beta) + 7), and
// 6 ds + 7 at generic base points.
size_t required_precision(const DegreeBounds& b, ChartKind kind);

struct SPResult {
  CurveFunction s, p;
};

// Throws CandidateRejected when no fraction within the bounds matches the
// series, PrecisionTooLow when the lift is too short.
SPResult reconstruct_sp(const LiftProblem& pb, const LocalLift& lift, const DegreeBounds& b);

struct QRResult {
  CurveFunction q, r;
};
// Throws NotAPerfectSquare, SignMismatch.
QRResult deduce_qr(const LiftProblem& pb, const LocalLift& lift, const SPResult& sp,
                   const CurveModel& C);

struct RationalRepresentation {
  CurveFunction s, p, q, r;
  CurvePoint P;
  CurveModel C, Cp;  // over the working field
};

struct VerificationReport {
  bool rr1 = false, rr2 = false;
  bool second_chart = false;
  bool degrees = false;
  bool points = false;
  int points_checked = 0;
  std::string detail;
  bool ok() const { return rr1 && rr2 && second_chart && degrees && points; }
};

VerificationReport verify_rational_rep(const RationalRepresentation& rep, const Mat& dphi,
                                       const DegreeBounds& b, size_t nu, std::mt19937_64& rng,
                                       int npoints = 20);

// (x1 + x2, x1 x2, y1 y2, (y2 - y1)/(x2 - x1)) at the point (u, v); empty at
// poles.
std::optional<std::array<Fe, 4>> eval_rep(const RationalRepresentation& rep, const Fe& u,
                                          const Fe& v, const Field* L = nullptr);

}  // namespace isogeny2
