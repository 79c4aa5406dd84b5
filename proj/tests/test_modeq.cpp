#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "isogeny2/dual.hpp"
#include "isogeny2/modeq.hpp"
#include "isogeny2/tangent.hpp"

using namespace isogeny2;
using namespace fixtures;

namespace {

const char* kIdentity = R"(# identity correspondence
kind hilbert_q5 11 7
vars 2
poly 1 2
0 0 1 0 1
1 0 0 0 -1
poly 2 2
0 0 0 1 1
0 1 0 0 -1
)";

std::string dump(const ModularEquationSet& M) {
  std::ostringstream o;
  if (M.kind == ModeqKind::Siegel) {
    o << "kind siegel " << M.ell << "\n";
  } else {
    o << "kind hilbert_q5 " << M.norm << " " << M.trace << "\n";
  }
  o << "vars " << M.nvars << "\n";
  for (size_t i = 0; i < M.polys.size(); ++i) {
    o << "poly " << i + 1 << " " << M.polys[i].terms.size() << "\n";
    for (auto& t : M.polys[i].terms) {
      for (auto e : t.exps) o << e << " ";
      o << t.coeff << "\n";
    }
  }
  return o.str();
}

ModularEquationSet random_set(int nvars, std::mt19937_64& rng) {
  ModularEquationSet M;
  M.kind = nvars == 3 ? ModeqKind::Siegel : ModeqKind::HilbertQ5;
  M.ell = 2;
  M.norm = 11;
  M.trace = 7;
  M.nvars = nvars;
  for (int i = 0; i < nvars; ++i) {
    ModeqPoly P;
    int nt = 3 + static_cast<int>(rng() % 6);
    for (int k = 0; k < nt; ++k) {
      ModeqTerm t;
      for (int v = 0; v < 2 * nvars; ++v) t.exps.push_back(static_cast<uint32_t>(rng() % 5));
      // Coefficients wider than a machine word.
      t.coeff = BigInt(rng()) * BigInt(rng()) - BigInt(rng()) * BigInt(rng());
      P.terms.push_back(t);
    }
    M.polys.push_back(P);
  }
  return M;
}

// Value of P with variable k replaced by x_k + eps.
Dual eval_dual(const ModeqPoly& P, const FieldPtr& F, const std::vector<Fe>& pt, size_t k) {
  Dual s = Dual::constant(El(F, F->zero()));
  for (const auto& t : P.terms) {
    Dual m = Dual::constant(El(F, F->from_bigint(t.coeff)));
    for (size_t v = 0; v < pt.size(); ++v) {
      Dual x = v == k ? Dual::variable(El(F, pt[v])) : Dual::constant(El(F, pt[v]));
      m = m * x.pow(static_cast<int>(t.exps[v]));
    }
    s = s + m;
  }
  return s;
}

}  // namespace

TEST(Modeq, IdentityCorrespondence) {
  auto F = Fp();
  auto M = parse_modeq(kIdentity);
  EXPECT_EQ(M.kind, ModeqKind::HilbertQ5);
  EXPECT_EQ(M.norm, 11);
  EXPECT_EQ(M.trace, 7);
  ASSERT_EQ(M.polys.size(), 2u);
  std::vector<Fe> pt = {F->from_int(1), F->from_int(2)};
  auto ev = evaluate_and_differentiate(M, F, pt, pt);
  EXPECT_TRUE(F->is_zero(ev.values[0]));
  EXPECT_TRUE(F->is_zero(ev.values[1]));
  EXPECT_EQ(ev.DL, -Mat::identity(F, 2));
  EXPECT_EQ(ev.DR, Mat::identity(F, 2));
}

TEST(Modeq, WrongArity) {
  // Five exponents in a Siegel set.
  EXPECT_THROW(
      {
        try {
          parse_modeq("kind siegel 2\nvars 3\npoly 1 1\n1 0 0 0 0 5\n");
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::WrongArity);
          throw;
        }
      },
      Error);
  try {
    parse_modeq("kind siegel 2\nvars 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongArity);
  }
  auto M = parse_modeq(kIdentity);
  auto F = Fp();
  EXPECT_THROW(evaluate_and_differentiate(M, F, {F->one()}, {F->one(), F->one()}), Error);
}

TEST(Modeq, ParseErrorsCarryLineNumbers) {
  try {
    parse_modeq("kind hilbert_q5 11 7\nvars 2\npoly 1 1\n0 0 1 x 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_THROW(parse_modeq("vars 2\n"), Error);
  EXPECT_THROW(parse_modeq("kind hilbert_q5 11 7\nvars 2\npoly 2 0\n"), Error);
  EXPECT_THROW(parse_modeq("kind hilbert_q5 11 7\nvars 2\npoly 1 3\n0 0 1 0 1\n"), Error);
  EXPECT_THROW(load_modeq("/nonexistent/file.txt"), Error);
}

TEST(Modeq, VanishingModP) {
  auto F = Field::prime(10007);
  auto M = parse_modeq("kind hilbert_q5 11 7\nvars 2\npoly 1 1\n1 0 0 0 10007\npoly 2 1\n0 1 0 0 1\n");
  EXPECT_THROW(evaluate_and_differentiate(M, F, {F->one(), F->one()}, {F->one(), F->one()}), Error);
}

TEST(Modeq, DumpParseRoundTrip) {
  std::mt19937_64 rng(40);
  for (int nv : {2, 3}) {
    auto M = random_set(nv, rng);
    auto N = parse_modeq(dump(M));
    ASSERT_EQ(N.polys.size(), M.polys.size());
    for (size_t i = 0; i < M.polys.size(); ++i)
      for (size_t k = 0; k < M.polys[i].terms.size(); ++k) {
        EXPECT_EQ(N.polys[i].terms[k].exps, M.polys[i].terms[k].exps);
        EXPECT_EQ(N.polys[i].terms[k].coeff, M.polys[i].terms[k].coeff);
      }
  }
}

TEST(Modeq, LoadFromFile) {
  std::string path = ::testing::TempDir() + "identity.modeq";
  std::ofstream(path) << kIdentity;
  EXPECT_EQ(load_modeq(path).polys.size(), 2u);
}

// Dual-number evaluation agrees with the symbolic derivative at 100 points.
TEST(Modeq, DualNumberOracle) {
  std::mt19937_64 rng(41);
  for (int nv : {2, 3}) {
    auto F = nv == 2 ? Fp() : Field::prime(10007);
    auto M = random_set(nv, rng);
    for (int t = 0; t < 100; ++t) {
      std::vector<Fe> l(nv), r(nv);
      for (auto& x : l) x = F->random(rng);
      for (auto& x : r) x = F->random(rng);
      auto ev = evaluate_and_differentiate(M, F, l, r);
      std::vector<Fe> pt(l);
      pt.insert(pt.end(), r.begin(), r.end());
      for (int i = 0; i < nv; ++i)
        for (int k = 0; k < 2 * nv; ++k) {
          Dual d = eval_dual(M.polys[i], F, pt, k);
          EXPECT_EQ(d.a.v(), ev.values[i]);
          EXPECT_EQ(d.b.v(), k < nv ? ev.DL.at(i, k) : ev.DR.at(i, k - nv));
        }
    }
  }
}

// Multiplying every polynomial by (J1 + 1) leaves DR^-1 DL unchanged on the
// correspondence.
TEST(Modeq, DenominatorClearingInvariance) {
  std::mt19937_64 rng(42);
  auto F = Fp();
  // Psi1 = J1' - J1^2 - 3 J2, Psi2 = J1 J2' - J2^3 - 1.
  const char* base = "kind hilbert_q5 11 7\nvars 2\npoly 1 3\n0 0 1 0 1\n2 0 0 0 -1\n0 1 0 0 -3\n"
                     "poly 2 3\n1 0 0 1 1\n0 3 0 0 -1\n0 0 0 0 -1\n";
  const char* scaled =
      "kind hilbert_q5 11 7\nvars 2\npoly 1 6\n0 0 1 0 1\n2 0 0 0 -1\n0 1 0 0 -3\n1 0 1 0 1\n3 0 0 0 -1\n1 1 0 0 -3\n"
      "poly 2 6\n1 0 0 1 1\n0 3 0 0 -1\n0 0 0 0 -1\n2 0 0 1 1\n1 3 0 0 -1\n1 0 0 0 -1\n";
  auto A = parse_modeq(base), B = parse_modeq(scaled);
  for (int t = 0; t < 50; ++t) {
    El j1(F, F->random(rng)), j2(F, F->random(rng));
    if (j1.is_zero() || (j1 + El::of(F, 1)).is_zero()) continue;
    El k1 = j1.sqr() + El::of(F, 3) * j2, k2 = (j2.pow(3) + El::of(F, 1)) / j1;
    std::vector<Fe> l = {j1.v(), j2.v()}, r = {k1.v(), k2.v()};
    auto ea = evaluate_and_differentiate(A, F, l, r), eb = evaluate_and_differentiate(B, F, l, r);
    for (auto& v : eb.values) EXPECT_TRUE(F->is_zero(v));
    if (!ea.DR.invertible()) continue;
    EXPECT_EQ(ea.DR.inverse() * ea.DL, eb.DR.inverse() * eb.DL);
  }
}
