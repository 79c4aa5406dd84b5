#pragma once

// Small dense matrices over a field.

#include <initializer_list>
#include <string>
#include <vector>

#include "isogeny2/field.hpp"

namespace isogeny2 {

class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr F, int rows, int cols) : F_(std::move(F)), r_(rows), c_(cols), a_(rows * cols) {}
  static Mat identity(const FieldPtr& F, int n);
  static Mat diag(const FieldPtr& F, const std::vector<Fe>& d);
  static Mat from_ints(const FieldPtr& F, std::initializer_list<std::initializer_list<int64_t>> rows);

  const FieldPtr& field() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  Fe& at(int i, int j) { return a_[i * c_ + j]; }
  const Fe& at(int i, int j) const { return a_[i * c_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scale(const Fe& s) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat select_rows(const std::vector<int>& idx) const;
  Mat select_cols(const std::vector<int>& idx) const;
  Fe det() const;
  bool invertible() const { return !F_->is_zero(det()); }
  // Throws SingularMatrix with `what` in the message.
  Mat inverse(const std::string& what = "matrix") const;
  bool is_diagonal() const;
  Mat lift(const FieldPtr& L) const;
  std::string str() const;

 private:
  FieldPtr F_;
  int r_ = 0, c_ = 0;
  std::vector<Fe> a_;
};

// The matrix of Sym^n(r) on polynomials of degree <= n, basis
// (x^n, ..., x, 1): Sym^n(r) W(x) = (b x + d)^n W((a x + c)/(b x + d)).
Mat sym_power(const Mat& r, int n);

}  // namespace isogeny2
