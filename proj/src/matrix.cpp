#include "isogeny2/matrix.hpp"

#include <sstream>

#include "isogeny2/series.hpp"

namespace isogeny2 {

Mat Mat::identity(const FieldPtr& F, int n) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = F->one();
  return m;
}

Mat Mat::diag(const FieldPtr& F, const std::vector<Fe>& d) {
  int n = static_cast<int>(d.size());
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
  return m;
}

Mat Mat::from_ints(const FieldPtr& F,
                   std::initializer_list<std::initializer_list<int64_t>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  Mat m(F, r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (auto v : row) m.at(i, j++) = F->from_int(v);
    ++i;
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw Error(Errc::InvalidArgument, "matrix shape mismatch");
  const FieldPtr& F = common_field(F_.get(), o.F_.get()) == F_.get() ? F_ : o.F_;
  Mat m(F, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < o.c_; ++j) {
      Fe s{};
      for (int k = 0; k < c_; ++k) s = F->add(s, F->mul(at(i, k), o.at(k, j)));
      m.at(i, j) = s;
    }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  const FieldPtr& F = common_field(F_.get(), o.F_.get()) == F_.get() ? F_ : o.F_;
  Mat m(F, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = F->add(a_[i], o.a_[i]);
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  const FieldPtr& F = common_field(F_.get(), o.F_.get()) == F_.get() ? F_ : o.F_;
  Mat m(F, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = F->sub(a_[i], o.a_[i]);
  return m;
}

Mat Mat::operator-() const {
  Mat m(F_, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = F_->neg(a_[i]);
  return m;
}

Mat Mat::scale(const Fe& s) const {
  Mat m(F_, r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = F_->mul(a_[i], s);
  return m;
}

bool Mat::operator==(const Mat& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

Mat Mat::transpose() const {
  Mat m(F_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::select_rows(const std::vector<int>& idx) const {
  Mat m(F_, static_cast<int>(idx.size()), c_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < c_; ++j) m.at(static_cast<int>(i), j) = at(idx[i], j);
  return m;
}

Mat Mat::select_cols(const std::vector<int>& idx) const {
  Mat m(F_, r_, static_cast<int>(idx.size()));
  for (int i = 0; i < r_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return m;
}

Fe Mat::det() const {
  if (r_ != c_) throw Error(Errc::InvalidArgument, "det of non-square matrix");
  Mat m = *this;
  const Field& F = *F_;
  Fe d = F.one();
  for (int k = 0; k < r_; ++k) {
    int piv = -1;
    for (int i = k; i < r_; ++i)
      if (!F.is_zero(m.at(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) return Fe{};
    if (piv != k) {
      for (int j = 0; j < c_; ++j) std::swap(m.at(k, j), m.at(piv, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(k, k));
    Fe inv = F.inv(m.at(k, k));
    for (int i = k + 1; i < r_; ++i) {
      Fe f = F.mul(m.at(i, k), inv);
      if (F.is_zero(f)) continue;
      for (int j = k; j < c_; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(k, j)));
    }
  }
  return d;
}

Mat Mat::inverse(const std::string& what) const {
  if (r_ != c_) throw Error(Errc::InvalidArgument, "inverse of non-square matrix");
  const Field& F = *F_;
  int n = r_;
  Mat m = *this, inv = identity(F_, n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!F.is_zero(m.at(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) throw Error(Errc::SingularMatrix, what + " is not invertible");
    for (int j = 0; j < n; ++j) {
      std::swap(m.at(k, j), m.at(piv, j));
      std::swap(inv.at(k, j), inv.at(piv, j));
    }
    Fe s = F.inv(m.at(k, k));
    for (int j = 0; j < n; ++j) {
      m.at(k, j) = F.mul(m.at(k, j), s);
      inv.at(k, j) = F.mul(inv.at(k, j), s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || F.is_zero(m.at(i, k))) continue;
      Fe f = m.at(i, k);
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(k, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(f, inv.at(k, j)));
      }
    }
  }
  return inv;
}

bool Mat::is_diagonal() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (i != j && !F_->is_zero(at(i, j))) return false;
  return true;
}

Mat Mat::lift(const FieldPtr& L) const {
  common_field(L.get(), F_.get());
  Mat m = *this;
  m.F_ = L;
  return m;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < c_; ++j) {
      if (j) os << ',';
      os << F_->to_string(at(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Mat sym_power(const Mat& r, int n) {
  const FieldPtr& F = r.field();
  const Fe a = r.at(0, 0), b = r.at(0, 1), c = r.at(1, 0), d = r.at(1, 1);
  Poly num(F, {c, a}), den(F, {d, b});  // a x + c, b x + d
  // Column for basis x^k (index n - k): (a x + c)^k (b x + d)^{n - k}.
  Mat m(F, n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    Poly t = Poly::constant(F, F->one());
    for (int i = 0; i < k; ++i) t = t * num;
    for (int i = 0; i < n - k; ++i) t = t * den;
    for (int e = 0; e <= n; ++e) m.at(n - e, n - k) = t.coeff(e);
  }
  return m;
}

}  // namespace isogeny2
