#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace isogeny2;
using namespace fixtures;

TEST(Curves, MoveWeierstrassPointToOrigin) {
  auto F = Fp();
  auto C = CurveModel::from_ints(F, kC);
  Fe u0 = F->from_int(kWeierstrassU);
  ASSERT_TRUE(F->is_zero(C.eval(u0)));
  Gl2Result g = gl2_transform(C, weierstrass_to_origin(C, u0));
  EXPECT_EQ(g.curve.sextic(), make_form(F, kCstd));
  EXPECT_EQ(g.tangent_factor, Mat::from_ints(F, {{44206, 18649}, {0, 7615}}));
}

TEST(Curves, Gl2PreservesInvariants) {
  std::mt19937_64 rng(20);
  auto F = Field::prime(10007);
  for (int t = 0; t < 20; ++t) {
    CurveModel C = random_curve(F, rng);
    Mat r = random_invertible(F, rng);
    Gl2Result g = gl2_transform(C, r);
    EXPECT_EQ(igusa_invariants(C.sextic()), igusa_invariants(g.curve.sextic()));
  }
}

TEST(Curves, MestreRoundTrip) {
  std::mt19937_64 rng(21);
  int done = 0, attempts = 0;
  while (done < 50 && attempts < 200) {
    ++attempts;
    auto F = Field::prime(done % 2 ? 10007 : kP);
    CurveModel C = random_curve(F, rng);
    std::array<Fe, 3> j;
    try {
      j = igusa_invariants(C.sextic());
    } catch (const Error&) {
      continue;
    }
    if (F->is_zero(j[2])) continue;
    CurveModel D;
    try {
      D = mestre_reconstruct(F, j, rng);
    } catch (const Error& e) {
      // Non-generic invariants are reported, never silently wrong.
      EXPECT_EQ(e.code(), Errc::NonGenericInvariants);
      continue;
    }
    EXPECT_EQ(igusa_invariants(D.sextic()), j);
    ++done;
  }
  EXPECT_EQ(done, 50);
}

TEST(Curves, MestreOnGoldenInvariants) {
  std::mt19937_64 rng(22);
  auto F = Fp();
  std::array<Fe, 3> j{F->from_int(14030), F->from_int(9041), F->from_int(56122)};
  EXPECT_EQ(igusa_invariants(mestre_reconstruct(F, j, rng).sextic()), j);
}

TEST(Curves, LocalExpansionSatisfiesCurve) {
  std::mt19937_64 rng(23);
  auto F = Fp();
  auto C = CurveModel::from_ints(F, kCstd);
  // Weierstrass chart at the origin.
  LocalExpansion w = local_expansion(C, {F->zero(), F->zero()}, 30);
  EXPECT_EQ(w.kind, ChartKind::Weierstrass);
  Series lhs = w.v * w.v, rhs = C.poly().eval(w.u);
  EXPECT_EQ(lhs.resized(28), rhs.resized(28));
  // Generic chart.
  for (;;) {
    Fe u = F->random(rng);
    auto v = F->sqrt(C.eval(u));
    if (!v || F->is_zero(*v)) continue;
    LocalExpansion g = local_expansion(C, {u, *v}, 30);
    EXPECT_EQ(g.kind, ChartKind::Generic);
    EXPECT_EQ((g.v * g.v).resized(29), C.poly().eval(g.u).resized(29));
    break;
  }
}

TEST(Curves, BasePointPrefersWeierstrass) {
  std::mt19937_64 rng(24);
  auto F = Fp();
  auto K = Fp2();
  auto C = CurveModel::from_ints(F, kCstd), Cp = CurveModel::from_ints(F, kCp);
  Mat dphi = Mat::diag(K, {el(K, 53481, 50651), el(K, 5538, 11076)}) *
             Mat::from_ints(F, {{44206, 18649}, {0, 7615}}).lift(K);
  BasePoint bp = find_base_point(C, dphi, Cp, rng, true, F->zero());
  EXPECT_TRUE(bp.weierstrass);
  EXPECT_TRUE(K->is_zero(bp.P.u));
  EXPECT_TRUE(Cp.contains(bp.Q.u, bp.Q.v, bp.field.get()));
  EXPECT_THROW(find_base_point(C, Mat(K, 2, 2), Cp, rng), Error);
}

TEST(Curves, DegreeCheck) {
  auto F = Fp();
  EXPECT_THROW(CurveModel::from_ints(F, {1, 2, 3, 4}), Error);
  EXPECT_NO_THROW(CurveModel::from_ints(F, {1, 0, 0, 0, 0, 1}));
}
