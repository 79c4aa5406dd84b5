#pragma once

// Transvectants of binary forms, the generator covariants of sextics, Igusa
// invariants and the matrix of their derivatives.

#include <array>
#include <vector>

#include "isogeny2/field.hpp"
#include "isogeny2/matrix.hpp"

namespace isogeny2 {

// sum a[i] x^i y^(n - i), n = a.size() - 1 is the nominal order.
struct BinaryForm {
  FieldPtr F;
  std::vector<Fe> a;
  int order() const { return static_cast<int>(a.size()) - 1; }
  bool operator==(const BinaryForm& o) const { return a == o.a; }
};

BinaryForm make_form(const FieldPtr& F, const std::vector<int64_t>& a);

// (f, g)_k normalized by the orders m, n of f and g.
BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int k);

// det(r)^k Sym^n(r) applied to a form of order n.
BinaryForm gl2_act(const Mat& r, int k, const BinaryForm& f);
// det^-2 Sym^6(r) on sextics.
inline BinaryForm gl2_act_sextic(const Mat& r, const BinaryForm& f) { return gl2_act(r, -2, f); }

struct Covariants {
  Fe I2, I4, I6, I6p, I10;
  BinaryForm y1, y2, y3;
  Fe R;
  // Mestre's A, B, C, D, from which the I_k are formed.
  Fe A, B, C, D;
};

Covariants generator_covariants(const BinaryForm& sextic);

struct IgusaClebsch {
  Fe I2, I4, I6, I10;
};
IgusaClebsch igusa_clebsch(const BinaryForm& sextic);

// Streng's (j1, j2, j3) = (I4 I6'/I10, I2 I4^2/I10, I4^5/I10^2).
std::array<Fe, 3> igusa_invariants(const BinaryForm& sextic);
std::array<Fe, 3> igusa_from_ic(const FieldPtr& F, const IgusaClebsch& ic);

// Row k: coefficients of Cov(dj_k/dtau) in the basis (x^2, x, 1), times
// Diag(2, 1, 2).
Mat dtau_j_matrix(const BinaryForm& sextic);

// Coefficients of a quadratic form in the basis (x^2, x, 1).
std::array<Fe, 3> quad_basis(const BinaryForm& q);

}  // namespace isogeny2
