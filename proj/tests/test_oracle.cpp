#include <gtest/gtest.h>

#include <optional>

#include "fixtures.hpp"
#include "isogeny2/jacobian_oracle.hpp"
#include "isogeny2/reconstruct.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

// Curves whose sextic has a root over F_p or F_p^2.
std::pair<CurveModel, JacobianOracle> oracle_curve(const FieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    CurveModel C = random_curve(F, rng);
    try {
      JacobianOracle J(C, rng);
      return {C, J};
    } catch (const Error& e) {
      if (e.code() != Errc::NonGenericPosition) throw;
    }
  }
}

MumfordDivisor random_divisor(const CurveModel& C, const JacobianOracle& J, std::mt19937_64& rng) {
  const Field& F = *J.field();
  MumfordDivisor D = J.identity();
  for (int k = 0; k < 2;) {
    Fe x = C.field()->random(rng);
    auto y = F.sqrt(C.eval(x, &F));
    if (!y || F.is_zero(F.sub(x, J.root()))) continue;
    D = J.add(D, J.point(x, *y));
    ++k;
  }
  return D;
}

}  // namespace

TEST(Oracle, GroupLaws) {
  std::mt19937_64 rng(80);
  auto F = Field::prime(10007);
  for (int t = 0; t < 5; ++t) {
    auto [C, J] = oracle_curve(F, rng);
    for (int k = 0; k < 10; ++k) {
      auto a = random_divisor(C, J, rng), b = random_divisor(C, J, rng), c = random_divisor(C, J, rng);
      EXPECT_EQ(J.add(a, J.identity()), a);
      EXPECT_EQ(J.add(a, b), J.add(b, a));
      EXPECT_EQ(J.add(J.add(a, b), c), J.add(a, J.add(b, c)));
      EXPECT_EQ(J.add(a, J.neg(a)), J.identity());
      EXPECT_EQ(J.mul(3, a), J.add(a, J.add(a, a)));
      EXPECT_EQ(J.mul(-2, a), J.neg(J.add(a, a)));
      EXPECT_EQ(J.mul(5, J.add(a, b)), J.add(J.mul(5, a), J.mul(5, b)));
    }
  }
}

TEST(Oracle, LargeMultiples) {
  std::mt19937_64 rng(81);
  auto F = Field::prime(10007);
  auto [C, J] = oracle_curve(F, rng);
  auto a = random_divisor(C, J, rng);
  EXPECT_EQ(J.mul(1000, a), J.add(J.mul(999, a), a));
  EXPECT_EQ(J.mul(0, a), J.identity());
}

// Rational representation of [m] from the solver against Cantor arithmetic.
TEST(Oracle, MultiplicationByMAgrees) {
  std::mt19937_64 rng(82);
  auto F = Field::prime(10007);
  for (int m : {2, 3}) {
    for (int t = 0; t < 2; ++t) {
      auto [C, J] = oracle_curve(F, rng);
      Mat dphi = Mat::identity(F, 2).scale(F->from_int(m));
      BasePoint bp = find_base_point(C, dphi, C, rng, false);
      auto b = degree_bounds_endomorphism(m);
      size_t nu = required_precision(b, ChartKind::Generic);
      EXPECT_EQ(nu, static_cast<size_t>(m == 2 ? 103 : 223));
      CurveModel CL = C.lift(bp.field);
      auto pb = make_lift_problem(CL, CL, dphi.lift(bp.field), bp, nu);
      auto lift = solve_lift(pb);
      auto sp = reconstruct_sp(pb, lift, b);
      auto qr = deduce_qr(pb, lift, sp, CL);
      RationalRepresentation rep{sp.s, sp.p, qr.q, qr.r, bp.P, CL, CL};
      JacobianOracle JL(CL, rng);
      int checked = 0;
      for (int k = 0; k < 400 && checked < 20; ++k) {
        const Field& L = *bp.field;
        Fe u = L.random(rng);
        auto v = L.sqrt(CL.eval(u));
        if (!v || L.is_zero(*v)) continue;
        auto got = eval_rep(rep, u, *v);
        if (!got) continue;
        try {
          auto want = oracle_rational_rep(JL, bp.P, m, {u, *v, false});
          EXPECT_EQ(*got, want);
          ++checked;
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::NonGenericPosition);
        }
      }
      EXPECT_EQ(checked, 20);
    }
  }
}
