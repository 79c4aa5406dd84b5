#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "isogeny2/reconstruct.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

struct GoldenRun {
  FieldPtr F = Fp(), K = Fp2();
  CurveModel C = CurveModel::from_ints(F, kCstd), Cp = CurveModel::from_ints(F, kCp);
  Mat factor = Mat::from_ints(F, {{44206, 18649}, {0, 7615}});
  std::mt19937_64 rng{70};

  LiftProblem problem(const Mat& diag, size_t nu = 35) {
    Mat dphi = diag * factor.lift(K);
    BasePoint bp = find_base_point(C, dphi, Cp, rng, true, F->zero());
    return make_lift_problem(C, Cp, dphi, bp, nu);
  }
  Mat good() { return Mat::diag(K, {el(K, 53481, 50651), el(K, 5538, 11076)}); }
  Mat bad() { return Mat::diag(K, {el(K, 19466, 38932), el(K, 26659, 53318)}); }
};

const std::vector<int64_t> kSnum = {11726, 49419, 22804, 9527, 17196, 40618, 50255};
const std::vector<int64_t> kPnum = {7231, 32206, 9325, 3347, 52568, 9569, 35444};
const std::vector<int64_t> kDen = {7238, 14612, 18069, 41828, 22913, 40883, 1};

}  // namespace

TEST(Bounds, Values) {
  auto s = degree_bounds_siegel(3);
  EXPECT_EQ(std::vector<int>({s.ds, s.dp, s.dq, s.dr}), std::vector<int>({12, 12, 36, 24}));
  auto h = degree_bounds_hilbert(7);
  EXPECT_EQ(std::vector<int>({h.ds, h.dp, h.dq, h.dr}), std::vector<int>({14, 14, 42, 28}));
  auto e = degree_bounds_endomorphism(2);
  EXPECT_EQ(e.ds, degree_bounds_siegel(4).ds);
  EXPECT_EQ(required_precision(h, ChartKind::Weierstrass), 35u);
  EXPECT_EQ(required_precision(degree_bounds_siegel(2), ChartKind::Weierstrass), 23u);
  EXPECT_EQ(required_precision(e, ChartKind::Generic), 103u);
}

TEST(Reconstruct, GoldenFractions) {
  GoldenRun r;
  auto pb = r.problem(r.good());
  LocalLift lift = solve_lift(pb);
  SPResult sp = reconstruct_sp(pb, lift, degree_bounds_hilbert(7));
  EXPECT_EQ(sp.s.even.num(), Poly::from_ints(r.F, kSnum).lift(pb.L));
  EXPECT_EQ(sp.s.even.den(), Poly::from_ints(r.F, kDen).lift(pb.L));
  EXPECT_EQ(sp.p.even.num(), Poly::from_ints(r.F, kPnum).lift(pb.L));
  EXPECT_EQ(sp.p.even.den(), Poly::from_ints(r.F, kDen).lift(pb.L));
  EXPECT_TRUE(sp.s.odd.is_zero());
  EXPECT_TRUE(sp.p.odd.is_zero());
}

TEST(Reconstruct, GoldenQRAndVerification) {
  GoldenRun r;
  auto pb = r.problem(r.good());
  LocalLift lift = solve_lift(pb);
  auto b = degree_bounds_hilbert(7);
  SPResult sp = reconstruct_sp(pb, lift, b);
  QRResult qr = deduce_qr(pb, lift, sp, r.C.lift(pb.L));
  EXPECT_LE(qr.q.even.num().degree(), b.dq);
  RationalRepresentation rep{sp.s, sp.p, qr.q, qr.r, pb.chart.P, r.C.lift(pb.L), r.Cp.lift(pb.L)};
  VerificationReport v = verify_rational_rep(rep, pb.dphi, b, 35, r.rng);
  EXPECT_TRUE(v.rr1);
  EXPECT_TRUE(v.rr2);
  EXPECT_TRUE(v.second_chart);
  EXPECT_TRUE(v.degrees);
  EXPECT_TRUE(v.points);
  EXPECT_EQ(v.points_checked, 20);
  EXPECT_TRUE(v.ok()) << v.detail;
}

// The q and r of the lift are reproduced by evaluating the fractions on the
// local chart.
TEST(Reconstruct, FractionsReexpandToLift) {
  GoldenRun r;
  auto pb = r.problem(r.good());
  LocalLift lift = solve_lift(pb);
  SPResult sp = reconstruct_sp(pb, lift, degree_bounds_hilbert(7));
  QRResult qr = deduce_qr(pb, lift, sp, r.C.lift(pb.L));
  const Series &u = pb.chart.u, &v = pb.chart.v;
  EXPECT_EQ(sp.s.eval(u, v), (lift.x1 + lift.x2).resized(u.prec()));
  EXPECT_EQ(sp.p.eval(u, v), (lift.x1 * lift.x2).resized(u.prec()));
  Series q = qr.q.eval(u, v), y = lift.y1 * lift.y2;
  size_t n = std::min(q.prec(), y.prec());
  EXPECT_EQ(q.resized(n), y.resized(n));
}

TEST(Reconstruct, WrongCandidateRejected) {
  GoldenRun r;
  auto pb = r.problem(r.bad());
  LocalLift lift = solve_lift(pb);
  try {
    reconstruct_sp(pb, lift, degree_bounds_hilbert(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CandidateRejected);
  }
}

TEST(Reconstruct, PrecisionTooLow) {
  GoldenRun r;
  auto pb = r.problem(r.good(), 25);
  LocalLift lift = solve_lift(pb);
  try {
    reconstruct_sp(pb, lift, degree_bounds_hilbert(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrecisionTooLow);
  }
}

TEST(CurvePoly, SqrtRoundTrip) {
  std::mt19937_64 rng(71);
  auto F = Field::prime(10007);
  Poly E = random_curve(F, rng).poly();
  for (int t = 0; t < 20; ++t) {
    auto rp = [&](int d) {
      std::vector<Fe> c(d + 1);
      for (auto& x : c) x = F->random(rng);
      return Poly(F, c);
    };
    CurvePoly x{rp(4), rp(2)};
    CurvePoly sq = cp_mul(x, x, E);
    auto r = cp_sqrt(sq, E);
    ASSERT_TRUE(r);
    CurvePoly back = cp_mul(*r, *r, E);
    EXPECT_EQ(back.a, sq.a);
    EXPECT_EQ(back.b, sq.b);
    EXPECT_EQ(cp_norm(sq, E), cp_norm(x, E) * cp_norm(x, E));
  }
}
