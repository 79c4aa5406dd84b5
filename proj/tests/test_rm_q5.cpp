#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "isogeny2/rm_q5.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

const GundlachPoint g_of(const FieldPtr& F, int64_t a, int64_t b) { return {F->from_int(a), F->from_int(b)}; }

}  // namespace

TEST(RmQ5, GundlachToIgusaGolden) {
  auto F = Fp();
  EXPECT_EQ(gundlach_to_igusa(F, g_of(F, 23, 56260)),
            (std::array<Fe, 3>{F->from_int(14030), F->from_int(9041), F->from_int(56122)}));
  EXPECT_EQ(gundlach_to_igusa(F, g_of(F, 8, 36073)),
            (std::array<Fe, 3>{F->from_int(13752), F->from_int(42980), F->from_int(12538)}));
}

TEST(RmQ5, IgusaToGundlachInverts) {
  auto F = Fp();
  auto g = igusa_to_gundlach(F, igusa_invariants(make_form(F, kC)));
  EXPECT_EQ(g.g1, F->from_int(23));
  EXPECT_EQ(g.g2, F->from_int(56260));
}

TEST(RmQ5, DegenerateGundlach) {
  auto F = Fp();
  // 3 g2^2 = 2 g1
  EXPECT_THROW(gundlach_to_igusa(F, g_of(F, 6, 2)), Error);
  EXPECT_THROW(gundlach_to_igusa(F, g_of(F, 0, 2)), Error);
}

TEST(RmQ5, RandomRoundTrip) {
  std::mt19937_64 rng(30);
  auto F = Field::prime(10007);
  int done = 0;
  for (int t = 0; t < 200 && done < 30; ++t) {
    GundlachPoint g{F->random(rng), F->random(rng)};
    std::array<Fe, 3> j;
    try {
      j = gundlach_to_igusa(F, g);
      auto back = igusa_to_gundlach(F, j);
      EXPECT_EQ(gundlach_to_igusa(F, back), j);
      ++done;
    } catch (const Error&) {
    }
  }
  EXPECT_EQ(done, 30);
}

TEST(RmQ5, BetaPair) {
  auto F = Fp();
  auto [b, bb] = beta_pair(F, 11, 7, F->from_int(kSqrt5));
  EXPECT_EQ(b, F->from_int(26213));
  EXPECT_EQ(bb, F->from_int(30105));
  EXPECT_EQ(F->mul(b, bb), F->from_int(11));
  EXPECT_THROW(beta_pair(F, 11, 9, F->from_int(kSqrt5)), Error);
}

TEST(RmQ5, DtGGoldenSecondCurve) {
  auto F = Fp();
  auto Cp = CurveModel::from_ints(F, kCp);
  EXPECT_EQ(dtG_matrix(Cp, F->from_int(kSqrt5), g_of(F, 8, 36073)),
            Mat::from_ints(F, {{15131, 739}, {50692, 49952}}));
}

// Three entries agree with the printed matrix; the (2,2) entry comes out as
// the value for which the chain rule is consistent.
TEST(RmQ5, DtGGoldenFirstCurve) {
  auto F = Fp();
  auto C = CurveModel::from_ints(F, kC);
  DtGResult r = dtG_matrix_unchecked(C, F->from_int(kSqrt5), g_of(F, 23, 56260));
  EXPECT_EQ(r.dtg, Mat::from_ints(F, {{43658, 17394}, {16028, 26556}}));
  EXPECT_TRUE(F->is_zero(r.residual.at(0, 0)));
  EXPECT_TRUE(F->is_zero(r.residual.at(0, 1)));
}

TEST(RmQ5, DtGRejectsNonNormalizedModel) {
  std::mt19937_64 rng(31);
  auto F = Fp();
  auto C = CurveModel::from_ints(F, kC);
  Gl2Result g = gl2_transform(C, random_invertible(F, rng));
  EXPECT_THROW(dtG_matrix(g.curve, F->from_int(kSqrt5)), Error);
}

TEST(RmQ5, HilbertNormalizedModels) {
  std::mt19937_64 rng(32);
  auto F = Fp();
  for (auto [g1, g2, want] : {std::tuple{23, 56260, std::vector<int64_t>{14336, 1, 0, 20717, 0, 34667, 24637}},
                              std::tuple{8, 36073, std::vector<int64_t>{13792, 1, 0, 2917, 0, 36343, 3706}}}) {
    GundlachPoint g = g_of(F, g1, g2);
    CurveModel C = hilb_curve_reconstruct(F, g, rng);
    EXPECT_EQ(C.sextic(), make_form(F, want));
    EXPECT_EQ(igusa_invariants(C.sextic()), gundlach_to_igusa(F, g));
    for (const Fe& r : pullback_residuals(C, g)) EXPECT_TRUE(F->is_zero(r));
    EXPECT_NO_THROW(dtG_matrix(C, F->from_int(kSqrt5), g));
  }
}
