#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "isogeny2/solver.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

Series rnd(const FieldPtr& F, size_t n, std::mt19937_64& rng) {
  Series s(F, n);
  for (size_t i = 0; i < n; ++i) s[i] = F->random(rng);
  return s;
}

// z theta' + (A + kappa) theta - B, to precision d.
SeriesVec ode_residual(const SeriesMat& A, const SeriesVec& B, int64_t kappa, const SeriesVec& th, size_t d) {
  const Field& F = *B[0].field();
  SeriesVec r;
  for (int a = 0; a < 2; ++a) {
    Series e(B[0].field(), d);
    for (size_t k = 0; k < d; ++k) {
      e[k] = F.mul(F.from_u64(static_cast<uint64_t>(kappa) + k), th[a][k]);
      e[k] = F.sub(e[k], B[a][k]);
    }
    for (int b = 0; b < 2; ++b) e = e + A[a][b].resized(d) * th[b].resized(d);
    r[a] = e;
  }
  return r;
}

struct Golden {
  FieldPtr F = Fp(), K = Fp2();
  CurveModel C = CurveModel::from_ints(F, kCstd), Cp = CurveModel::from_ints(F, kCp);
  Mat dphi = Mat::diag(K, {el(K, 53481, 50651), el(K, 5538, 11076)}) *
             Mat::from_ints(F, {{44206, 18649}, {0, 7615}}).lift(K);
};

}  // namespace

TEST(Ode, DacMatchesNaive100) {
  std::mt19937_64 rng(60);
  for (int t = 0; t < 100; ++t) {
    auto F = Field::prime(t % 2 ? 10007 : kP);
    size_t d = 1 + rng() % 300;
    int64_t kappa = 1 + static_cast<int64_t>(rng() % 50);
    SeriesMat A = {{{rnd(F, d, rng), rnd(F, d, rng)}, {rnd(F, d, rng), rnd(F, d, rng)}}};
    SeriesVec B = {rnd(F, d, rng), rnd(F, d, rng)};
    SeriesVec x, y;
    try {
      x = naive_ode_solve(A, B, kappa, d);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NonInvertibleLeading);
      EXPECT_THROW(dac_ode_solve(A, B, kappa, d), Error);
      continue;
    }
    y = dac_ode_solve(A, B, kappa, d);
    EXPECT_EQ(x[0], y[0]);
    EXPECT_EQ(x[1], y[1]);
    auto r = ode_residual(A, B, kappa, y, d);
    EXPECT_TRUE(r[0].is_zero());
    EXPECT_TRUE(r[1].is_zero());
  }
}

TEST(Ode, CharacteristicTooSmall) {
  auto F = Field::prime(101);
  std::mt19937_64 rng(61);
  SeriesMat A = {{{rnd(F, 120, rng), rnd(F, 120, rng)}, {rnd(F, 120, rng), rnd(F, 120, rng)}}};
  SeriesVec B = {rnd(F, 120, rng), rnd(F, 120, rng)};
  try {
    dac_ode_solve(A, B, 1, 120);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonInvertibleLeading);
  }
}

TEST(Lift, GoldenResidualsVanish) {
  Golden a;
  std::mt19937_64 rng(62);
  BasePoint bp = find_base_point(a.C, a.dphi, a.Cp, rng, true, a.F->zero());
  ASSERT_TRUE(bp.weierstrass);
  auto pb = make_lift_problem(a.C, a.Cp, a.dphi, bp, 35);
  for (auto method : {OdeMethod::Naive, OdeMethod::DivideAndConquer}) {
    LocalLift lift = solve_lift(pb, method);
    EXPECT_EQ(lift.prec, 35u);
    auto r = lift_residuals(pb, lift);
    EXPECT_GE(r.ode1, 34u);
    EXPECT_GE(r.ode2, 34u);
    EXPECT_GE(r.curve1, 35u);
    EXPECT_GE(r.curve2, 35u);
    // The second branch is the first one at -z.
    for (size_t k = 0; k < 35; ++k) {
      Fe c = lift.x1[k];
      EXPECT_EQ(lift.x2[k], k % 2 ? pb.L->neg(c) : c);
    }
  }
  EXPECT_EQ(solve_lift(pb, OdeMethod::Naive).x1, solve_lift(pb).x1);
}

TEST(Lift, InitializationBranches) {
  Golden a;
  std::mt19937_64 rng(63);
  BasePoint bp = find_base_point(a.C, a.dphi, a.Cp, rng, true, a.F->zero());
  auto pb = make_lift_problem(a.C, a.Cp, a.dphi, bp, 35);
  LocalLift l = initialize_lift(pb);
  EXPECT_EQ(l.x1[0], bp.Q.u);
  EXPECT_EQ(l.y1[0], bp.Q.v);
  EXPECT_EQ(l.y2[0], pb.L->neg(bp.Q.v));
}

TEST(Lift, PrecisionMustBeBelowCharacteristic) {
  auto F = Field::prime(101);
  std::mt19937_64 rng(64);
  CurveModel C = random_curve(F, rng);
  Mat dphi = Mat::identity(F, 2).scale(F->from_int(2));
  BasePoint bp = find_base_point(C, dphi, C, rng);
  EXPECT_THROW(make_lift_problem(C, C, dphi, bp, 200), Error);
}

// Endomorphisms at generic and Weierstrass points lift to full precision.
TEST(Lift, EndomorphismResiduals) {
  std::mt19937_64 rng(65);
  auto F = Field::prime(10007);
  for (int t = 0; t < 6; ++t) {
    CurveModel C = random_curve(F, rng);
    Mat dphi = Mat::identity(F, 2).scale(F->from_int(2 + t % 2));
    BasePoint bp = find_base_point(C, dphi, C, rng, t % 3 == 0);
    auto pb = make_lift_problem(C, C, dphi, bp, 80);
    auto r = lift_residuals(pb, solve_lift(pb));
    EXPECT_GE(r.ode1, 79u);
    EXPECT_GE(r.ode2, 79u);
    EXPECT_GE(r.curve1, 80u);
    EXPECT_GE(r.curve2, 80u);
  }
}
