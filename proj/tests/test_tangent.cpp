#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "isogeny2/rm_q5.hpp"
#include "isogeny2/tangent.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

struct Golden {
  FieldPtr F = Fp(), K = Fp2();
  Fe beta = F->from_int(26213), betabar = F->from_int(30105);
  // The correct tangent matrix and the rejected one for beta.
  Mat dphi_betabar = Mat::diag(K, {el(K, 53481, 50651), el(K, 5538, 11076)});
  Mat dphi_beta = Mat::diag(K, {el(K, 19466, 38932), el(K, 26659, 53318)});
};

Mat square(const Mat& M) { return M * M; }

}  // namespace

TEST(Tangent, GoldenSquares) {
  Golden a;
  EXPECT_EQ(square(a.dphi_betabar), Mat::from_ints(a.F, {{23456, 0}, {0, 27735}}).lift(a.K));
  EXPECT_EQ(square(a.dphi_beta), Mat::from_ints(a.F, {{53563, 0}, {0, 48261}}).lift(a.K));
}

// Both candidates solve the same system with (beta, betabar) swapped, so
// their squares differ by Diag(beta/betabar, betabar/beta).
TEST(Tangent, BetaBetabarRelation) {
  Golden a;
  const Field& F = *a.F;
  Mat ratio = Mat::diag(a.F, {F.div(a.beta, a.betabar), F.div(a.betabar, a.beta)});
  EXPECT_EQ(square(a.dphi_beta), square(a.dphi_betabar) * ratio.lift(a.K));
}

// A system built so that X is the reference solution reproduces the reference
// matrices up to sign.
TEST(Tangent, CandidatesMatchGoldenUpToSign) {
  Golden a;
  const Field& F = *a.F;
  std::mt19937_64 rng(50);
  Mat X = Mat::diag(a.F, {F.div(F.from_int(23456), a.betabar), F.div(F.from_int(27735), a.beta)});
  Mat dC = Mat::from_ints(a.F, {{43658, 17394}, {16028, 26556}});
  Mat dCp = Mat::from_ints(a.F, {{15131, 739}, {50692, 49952}});
  Mat DR = random_invertible(a.F, rng);
  Mat DL = -(DR * dCp * X * dC.inverse());
  auto cands = tangent_candidates_hilbert(DL, DR, dC, dCp, a.beta, a.betabar);
  ASSERT_EQ(cands.size(), 4u);
  auto same_up_to_sign = [](const Mat& A, const Mat& B) { return A == B || A == -B; };
  // Image of a reference matrix under a -> alpha.
  auto embed = [&](const Mat& M, const FieldPtr& L, const Fe& alpha) {
    Mat out(L, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        auto c = a.K->coeffs(M.at(i, j));
        out.at(i, j) = L->add(L->from_u64(c[0]), L->mul(L->from_u64(c[1]), alpha));
      }
    return out;
  };
  int hits_bb = 0, hits_b = 0;
  for (auto& c : cands) {
    const FieldPtr& L = c.dphi.field();
    bool bb = c.tag.rfind("betabar", 0) == 0;
    const Mat& want = bb ? a.dphi_betabar : a.dphi_beta;
    Mat want_sq = bb ? Mat::from_ints(a.F, {{23456, 0}, {0, 27735}}) : Mat::from_ints(a.F, {{53563, 0}, {0, 48261}});
    EXPECT_EQ(square(c.dphi), want_sq.lift(L)) << c.tag;
    bool hit = false;
    for (const Fe& alpha : poly_roots(Poly::from_ints(a.F, {2, 1, 1}).lift(L), rng)) {
      hit = hit || same_up_to_sign(c.dphi, embed(want, L, alpha));
    }
    (bb ? hits_bb : hits_b) += hit;
  }
  EXPECT_EQ(hits_bb, 1);
  EXPECT_EQ(hits_b, 1);
}

TEST(Tangent, NonDiagonalSolutionRejected) {
  std::mt19937_64 rng(51);
  auto F = Fp();
  Mat dC = random_invertible(F, rng), dCp = random_invertible(F, rng), DR = random_invertible(F, rng);
  Mat X = Mat::from_ints(F, {{1, 2}, {3, 4}});
  Mat DL = -(DR * dCp * X * dC.inverse());
  try {
    tangent_candidates_hilbert(DL, DR, dC, dCp, F->from_int(26213), F->from_int(30105));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonDiagonalSolution);
  }
}

TEST(Tangent, SingularInputs) {
  auto F = Fp();
  Mat Z(F, 2, 2), I = Mat::identity(F, 2);
  EXPECT_THROW(tangent_candidates_hilbert(I, Z, I, I, F->one(), F->one()), Error);
  EXPECT_THROW(deformation_matrix_siegel(I, Z, I, I), Error);
}

TEST(Tangent, DiagonalRoots) {
  auto F = Fp();
  Fe d1 = F->from_int(4), d2 = F->from_int(-1);
  auto r = diagonal_roots(F, d1, d2);
  ASSERT_EQ(r.size(), 2u);
  const FieldPtr& L = r[0].field();
  EXPECT_EQ(square(r[0]), Mat::diag(F, {d1, d2}).lift(L));
  EXPECT_EQ(square(r[1]), Mat::diag(F, {d1, d2}).lift(L));
  EXPECT_NE(r[0], r[1]);
}

TEST(Tangent, Sym2ExtractRecovers) {
  std::mt19937_64 rng(52);
  auto F = Field::prime(10007);
  for (int t = 0; t < 50; ++t) {
    Mat M = random_invertible(F, rng);
    Fe scale = F->from_int(1 + static_cast<int64_t>(rng() % 50));
    Mat S = sym_power(M, 2).scale(scale);
    auto got = sym2_extract(S, scale);
    ASSERT_TRUE(got);
    const FieldPtr& L = got->field();
    EXPECT_TRUE(*got == M.lift(L) || *got == (-M).lift(L));
    EXPECT_EQ(sym_power(*got, 2), sym_power(M, 2).lift(L));
  }
  // Not a symmetric square.
  Mat S = Mat::from_ints(F, {{1, 0, 0}, {0, 5, 0}, {0, 0, 1}});
  EXPECT_FALSE(sym2_extract(S, F->one()));
}

// Identity correspondence between a curve and itself: the deformation matrix
// is the identity and the tangent matrix is +-Id.
TEST(Tangent, SiegelIdentityCorrespondence) {
  std::mt19937_64 rng(53);
  auto F = Fp();
  CurveModel C = random_curve(F, rng);
  Mat Dt = dtau_j_matrix(C.sextic());
  Mat I3 = Mat::identity(F, 3);
  Mat D = deformation_matrix_siegel(-I3, I3, Dt, Dt);
  EXPECT_EQ(D, I3);
  auto dphi = sym2_extract(D, F->one());
  ASSERT_TRUE(dphi);
  EXPECT_TRUE(*dphi == Mat::identity(dphi->field(), 2) || *dphi == -Mat::identity(dphi->field(), 2));
}

// An isomorphism r between two models: the modular "equation" J' = J gives
// back r up to sign and the twist factor.
TEST(Tangent, SiegelIsomorphismRecovered) {
  std::mt19937_64 rng(54);
  auto F = Fp();
  CurveModel C = random_curve(F, rng);
  Gl2Result g = gl2_transform(C, random_invertible(F, rng));
  Mat I3 = Mat::identity(F, 3);
  Mat D = deformation_matrix_siegel(-I3, I3, dtau_j_matrix(C.sextic()), dtau_j_matrix(g.curve.sextic()));
  auto dphi = sym2_extract(D, F->one());
  ASSERT_TRUE(dphi);
  Mat chk = sym_power(*dphi, 2);
  EXPECT_EQ(chk, D.lift(chk.field()));
}
