#include "isogeny2/tangent.hpp"

namespace isogeny2 {

Mat deformation_matrix_siegel(const Mat& DL, const Mat& DR, const Mat& dtau_C,
                              const Mat& dtau_Cp) {
  Mat a = dtau_Cp.inverse("D_tauJ(C')");
  Mat b = DR.inverse("D_R");
  if (!DL.invertible()) throw Error(Errc::SingularMatrix, "D_L is singular");
  if (!dtau_C.invertible()) throw Error(Errc::SingularMatrix, "D_tauJ(C) is singular");
  return -(a * b * DL * dtau_C);
}

namespace {

// Square root of x in K or in K adjoined with it; updates K.
Fe root_in(FieldPtr& K, const Fe& x) {
  if (auto r = K->sqrt(x)) return *r;
  auto [L, t] = adjoin_sqrt(K, x);
  K = L;
  return t;
}

Mat canonical_sign(Mat M) {
  const Field& F = *M.field();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Fe& e = M.at(i, j);
      if (F.is_zero(e)) continue;
      if (F.canonical_sign(e) != e) return -M;
      return M;
    }
  return M;
}

}  // namespace

std::optional<Mat> sym2_extract(const Mat& S, const Fe& scale) {
  if (S.rows() != 3 || S.cols() != 3) throw Error(Errc::InvalidArgument, "sym2_extract needs 3x3");
  FieldPtr K = S.field();
  Mat T = S.scale(K->inv(scale));
  auto e = [&](int i, int j) { return El(K, T.at(i, j)); };
  El a, b, c, d;
  if (!K->is_zero(T.at(0, 0))) {
    Fe r = root_in(K, T.at(0, 0));
    a = El(K, r);
    b = e(0, 1) / a;
    c = e(1, 0) / (2 * a);
    d = (e(1, 1) - b * c) / a;
  } else if (!K->is_zero(T.at(0, 2))) {
    a = El(K, Fe{});
    Fe r = root_in(K, T.at(0, 2));
    b = El(K, r);
    c = e(1, 1) / b;
    d = e(1, 2) / (2 * b);
  } else {
    return std::nullopt;
  }
  Mat M(K, 2, 2);
  M.at(0, 0) = a.v();
  M.at(0, 1) = b.v();
  M.at(1, 0) = c.v();
  M.at(1, 1) = d.v();
  if (!M.invertible()) return std::nullopt;
  if (sym_power(M, 2) != T.lift(K)) return std::nullopt;
  return canonical_sign(M);
}

std::vector<Mat> diagonal_roots(const FieldPtr& F, const Fe& d1, const Fe& d2) {
  FieldPtr K = F;
  if (F->is_zero(d1) || F->is_zero(d2)) throw Error(Errc::SingularMatrix, "(dphi)^2 is singular");
  Fe r1 = root_in(K, d1);
  Fe r2 = root_in(K, d2);
  Mat P = Mat::diag(K, {r1, r2});
  Mat Q = Mat::diag(K, {r1, K->neg(r2)});
  return {canonical_sign(P), canonical_sign(Q)};
}

std::vector<TangentCandidate> tangent_candidates_hilbert(const Mat& DL, const Mat& DR,
                                                         const Mat& dtg_C, const Mat& dtg_Cp,
                                                         const Fe& beta, const Fe& betabar) {
  const FieldPtr& F = DL.field();
  Mat X = -((DR * dtg_Cp).inverse("D_R DtG(C')") * DL * dtg_C);
  std::vector<TangentCandidate> out;
  for (int swap = 0; swap < 2; ++swap) {
    Fe b1 = swap ? betabar : beta, b2 = swap ? beta : betabar;
    Mat sq = Mat::diag(F, {b1, b2}) * X;
    if (!sq.is_diagonal()) {
      throw Error(Errc::NonDiagonalSolution, "(dphi)^2 is not diagonal");
    }
    auto roots = diagonal_roots(F, sq.at(0, 0), sq.at(1, 1));
    std::string base = swap ? "betabar" : "beta";
    out.push_back({roots[0], base + ",+"});
    out.push_back({roots[1], base + ",-"});
  }
  return out;
}

}  // namespace isogeny2
