#pragma once

// Deformation matrices and tangent-matrix candidates.

#include <optional>
#include <string>
#include <vector>

#include "isogeny2/matrix.hpp"

namespace isogeny2 {

struct TangentCandidate {
  Mat dphi;         // 2x2, possibly over an extension
  std::string tag;  // e.g. "beta,+", "betabar,-", "siegel"
};

// -DtauJ(C')^-1 DR^-1 DL DtauJ(C). Throws SingularMatrix naming the factor.
Mat deformation_matrix_siegel(const Mat& DL, const Mat& DR, const Mat& dtau_C,
                              const Mat& dtau_Cp);

// M with Sym^2(M) = S/scale, sign canonical on the first nonzero entry; the
// field may grow by one square root. Empty when S is not of that shape.
std::optional<Mat> sym2_extract(const Mat& S, const Fe& scale);

// (dphi)^2 = Diag(b1, b2) X with DL DtG(C) = -DR DtG(C') X, for (b1, b2) equal
// to (beta, betabar) and (betabar, beta); two sign choices each modulo a
// global sign. Throws SingularMatrix, NonDiagonalSolution.
std::vector<TangentCandidate> tangent_candidates_hilbert(const Mat& DL, const Mat& DR,
                                                         const Mat& dtg_C, const Mat& dtg_Cp,
                                                         const Fe& beta, const Fe& betabar);

// Diagonal square roots of Diag(d1, d2), extending the field as needed.
// Returns {Diag(r1, r2), Diag(r1, -r2)}.
std::vector<Mat> diagonal_roots(const FieldPtr& F, const Fe& d1, const Fe& d2);

}  // namespace isogeny2
