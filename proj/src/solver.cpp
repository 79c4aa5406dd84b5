#include "isogeny2/solver.hpp"

namespace isogeny2 {

LiftProblem make_lift_problem(const CurveModel& C, const CurveModel& Cp, const Mat& dphi,
                              const BasePoint& bp, size_t nu) {
  if (nu < 2) throw Error(Errc::InvalidArgument, "precision must be at least 2");
  if (nu >= bp.field->p()) {
    throw Error(Errc::NonInvertibleLeading, "characteristic must exceed the precision");
  }
  LiftProblem pb;
  pb.L = bp.field;
  const Field& F = *pb.L;
  pb.Cp = Cp.lift(pb.L);
  pb.Ep = pb.Cp.poly();
  pb.dEp = pb.Ep.derivative();
  pb.dphi = dphi.lift(pb.L);
  pb.chart = local_expansion(C, bp.P, nu, pb.L);
  pb.Q = bp.Q;
  if (F.is_zero(pb.Q.v)) throw Error(Errc::InvalidArgument, "image point must not be Weierstrass");
  pb.nu = nu;
  const Mat& m = pb.dphi;
  const Series& U = pb.chart.u;
  const Series& D = pb.chart.D;
  auto lin = [&](const Fe& a, const Fe& b) {
    Series t = U.scale(a);
    t[0] = F.add(t[0], b);
    return t * D;
  };
  pb.rhs = {lin(m.at(0, 0), m.at(0, 1)), lin(m.at(1, 0), m.at(1, 1))};
  return pb;
}

namespace {

struct Rows {
  SeriesVec R, iy, dx;
};

SeriesVec curve_y(const LiftProblem& pb, const Series& x1, const Series& x2) {
  const Field& F = *pb.L;
  return {series_sqrt(pb.Ep.eval(x1), pb.Q.v), series_sqrt(pb.Ep.eval(x2), F.neg(pb.Q.v))};
}

Rows ode_rows(const LiftProblem& pb, const SeriesVec& x, const SeriesVec& y, size_t n) {
  Rows r;
  for (int i = 0; i < 2; ++i) {
    r.iy[i] = series_inv(y[i].resized(n));
    r.dx[i] = x[i].resized(n + 1).derivative();
  }
  Series l1 = x[0].resized(n) * r.dx[0] * r.iy[0] + x[1].resized(n) * r.dx[1] * r.iy[1];
  Series l2 = r.dx[0] * r.iy[0] + r.dx[1] * r.iy[1];
  r.R = {pb.rhs[0].resized(n) - l1, pb.rhs[1].resized(n) - l2};
  return r;
}

void check_char(const Field& F, int64_t kappa, size_t d) {
  if (kappa < 0 || static_cast<uint64_t>(kappa) + d > F.p()) {
    throw Error(Errc::NonInvertibleLeading,
                "offset " + std::to_string(kappa) + " + " + std::to_string(d) +
                    " reaches the characteristic");
  }
}

}  // namespace

LocalLift initialize_lift(const LiftProblem& pb) {
  const Field& F = *pb.L;
  const Fe& x0 = pb.Q.u;
  const Fe& y0 = pb.Q.v;
  // v1 - v2 = y0 rhs2(0), v1^2 - v2^2 = y0 r1.
  Fe s = F.mul(y0, pb.rhs[1][0]);
  if (F.is_zero(s)) throw Error(Errc::EqualRoots, "v1 = v2 at initialization");
  Fe r1 = F.sub(pb.rhs[0][1], F.mul(x0, pb.rhs[1][1]));
  Fe vp = F.div(F.mul(y0, r1), s);
  Fe v1 = F.div(F.add(s, vp), F.from_int(2));
  Fe v2 = F.sub(vp, v1);
  LocalLift lift;
  lift.prec = 2;
  lift.x1 = Series(pb.L, {x0, v1});
  lift.x2 = Series(pb.L, {x0, v2});
  auto y = curve_y(pb, lift.x1, lift.x2);
  lift.y1 = y[0];
  lift.y2 = y[1];
  return lift;
}

SeriesVec naive_ode_solve(const SeriesMat& A, const SeriesVec& B, int64_t kappa, size_t d) {
  const FieldPtr& L = B[0].field();
  const Field& F = *L;
  check_char(F, kappa, d);
  SeriesVec th = {Series(L, d), Series(L, d)};
  for (size_t k = 0; k < d; ++k) {
    Fe rhs[2] = {B[0][k], B[1][k]};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (size_t j = 0; j < k; ++j) {
          rhs[a] = F.sub(rhs[a], F.mul(A[a][b][k - j], th[b][j]));
        }
    Fe kk = F.from_u64(static_cast<uint64_t>(kappa) + k);
    Fe l00 = F.add(A[0][0][0], kk), l01 = A[0][1][0];
    Fe l10 = A[1][0][0], l11 = F.add(A[1][1][0], kk);
    Fe det = F.sub(F.mul(l00, l11), F.mul(l01, l10));
    if (F.is_zero(det)) {
      throw Error(Errc::NonInvertibleLeading, "A(0) + " + std::to_string(kappa + k) + " is singular");
    }
    Fe idet = F.inv(det);
    th[0][k] = F.mul(F.sub(F.mul(l11, rhs[0]), F.mul(l01, rhs[1])), idet);
    th[1][k] = F.mul(F.sub(F.mul(l00, rhs[1]), F.mul(l10, rhs[0])), idet);
  }
  return th;
}

namespace {

constexpr size_t kDacLeaf = 32;

SeriesVec dac_rec(const SeriesMat& A, const SeriesVec& B, int64_t kappa, size_t d) {
  if (d <= kDacLeaf) return naive_ode_solve(A, B, kappa, d);
  const Field& F = *B[0].field();
  size_t d1 = d / 2;
  SeriesVec t1 = dac_rec(A, B, kappa, d1);
  SeriesVec B2;
  for (int a = 0; a < 2; ++a) {
    Series e = B[a].resized(d);
    for (int b = 0; b < 2; ++b) e = e - A[a][b].resized(d) * t1[b].resized(d);
    for (size_t k = 0; k < d1; ++k) {
      Fe c = F.mul(F.from_u64(static_cast<uint64_t>(kappa) + k), t1[a][k]);
      e[k] = F.sub(e[k], c);
    }
    B2[a] = e.slice(d1, d);
  }
  SeriesVec t2 = dac_rec(A, B2, kappa + static_cast<int64_t>(d1), d - d1);
  SeriesVec th;
  for (int a = 0; a < 2; ++a) {
    th[a] = t1[a].resized(d) + t2[a].mul_z(d1);
  }
  return th;
}

}  // namespace

SeriesVec dac_ode_solve(const SeriesMat& A, const SeriesVec& B, int64_t kappa, size_t d) {
  check_char(*B[0].field(), kappa, d);
  return dac_rec(A, B, kappa, d);
}

LocalLift newton_lift(const LiftProblem& pb, LocalLift lift, OdeMethod method) {
  const FieldPtr& L = pb.L;
  const Field& F = *L;
  size_t n = lift.prec;
  SeriesVec x = {lift.x1, lift.x2};
  while (n < pb.nu) {
    size_t W = std::min(2 * n - 1, pb.nu);
    SeriesVec xs = {x[0].resized(W), x[1].resized(W)};
    SeriesVec y = curve_y(pb, xs[0], xs[1]);
    Rows r = ode_rows(pb, xs, y, W);

    SeriesMat M = {{{xs[0] * r.iy[0], xs[1] * r.iy[1]}, {r.iy[0], r.iy[1]}}};
    SeriesMat N;
    Fe half = F.inv(F.from_int(2));
    for (int i = 0; i < 2; ++i) {
      Series iy3 = r.iy[i] * r.iy[i] * r.iy[i];
      Series t = (r.dx[i] * pb.dEp.eval(xs[i]) * iy3).scale(half);
      N[1][i] = -t;
      N[0][i] = r.dx[i] * r.iy[i] - xs[i] * t;
    }
    Series det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    if (det.valuation() != 1) {
      throw Error(Errc::EqualRoots, "det M does not have valuation one at precision " +
                                        std::to_string(n));
    }
    // z/det; the unknown top coefficient only reaches terms beyond W.
    Series zdet = series_inv(det.div_z(1).resized(W));
    SeriesMat I = {{{zdet * M[1][1], -(zdet * M[0][1])}, {-(zdet * M[1][0]), zdet * M[0][0]}}};
    SeriesMat A;
    SeriesVec B;
    size_t d = W - n;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) A[a][b] = (I[a][0] * N[0][b] + I[a][1] * N[1][b]).resized(d);
      Series Bf = I[a][0] * r.R[0] + I[a][1] * r.R[1];
      if (Bf.valuation() < n) {
        throw Error(Errc::ResidualNonzero, "residual below precision " + std::to_string(n));
      }
      B[a] = Bf.slice(n, W);
    }
    SeriesVec th = method == OdeMethod::Naive ? naive_ode_solve(A, B, static_cast<int64_t>(n), d)
                                              : dac_ode_solve(A, B, static_cast<int64_t>(n), d);
    for (int i = 0; i < 2; ++i) x[i] = (xs[i].resized(n).resized(W) + th[i].mul_z(n)).resized(W);
    n = W;
  }
  LocalLift out;
  out.prec = n;
  out.x1 = x[0].resized(n);
  out.x2 = x[1].resized(n);
  auto y = curve_y(pb, out.x1, out.x2);
  out.y1 = y[0];
  out.y2 = y[1];
  return out;
}

LocalLift solve_lift(const LiftProblem& pb, OdeMethod method) {
  return newton_lift(pb, initialize_lift(pb), method);
}

LiftResiduals lift_residuals(const LiftProblem& pb, const LocalLift& lift) {
  SeriesVec x = {lift.x1, lift.x2}, y = {lift.y1, lift.y2};
  Rows r = ode_rows(pb, x, y, lift.prec - 1);
  LiftResiduals out;
  out.ode1 = r.R[0].valuation();
  out.ode2 = r.R[1].valuation();
  out.curve1 = (y[0] * y[0] - pb.Ep.eval(x[0])).valuation();
  out.curve2 = (y[1] * y[1] - pb.Ep.eval(x[1])).valuation();
  return out;
}

}  // namespace isogeny2
