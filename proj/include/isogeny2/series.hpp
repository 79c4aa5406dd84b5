#pragma once

// Univariate polynomials, truncated power series, rational fractions.

#include <optional>
#include <vector>

#include "isogeny2/field.hpp"

namespace isogeny2 {

class Series;

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr F) : F_(std::move(F)) {}
  Poly(FieldPtr F, std::vector<Fe> c);
  static Poly constant(const FieldPtr& F, const Fe& c);
  static Poly monomial(const FieldPtr& F, const Fe& c, int deg);
  static Poly x(const FieldPtr& F) { return monomial(F, F->one(), 1); }
  static Poly from_ints(const FieldPtr& F, const std::vector<int64_t>& c);

  const FieldPtr& field() const { return F_; }
  const std::vector<Fe>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Fe coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Fe{}; }
  Fe lead() const { return c_.empty() ? Fe{} : c_.back(); }
  int valuation() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scale(const Fe& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Euclidean division; throws InvalidArgument on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly derivative() const;
  // x may live in an extension L of the coefficient field.
  Fe eval(const Fe& x, const Field* L = nullptr) const;
  Poly compose(const Poly& g) const;
  Series eval(const Series& s) const;
  // Coefficients moved into a larger field of the same tower.
  Poly lift(const FieldPtr& L) const;

 private:
  void trim();
  FieldPtr F_;
  std::vector<Fe> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic, zero if both zero
// base^e mod m.
Poly powmod(const Poly& base, const BigInt& e, const Poly& m);
// Distinct roots in the coefficient field, sorted by coefficient vector.
std::vector<Fe> poly_roots(const Poly& f, std::mt19937_64& rng);
// g = u a + v b, g monic.
void xgcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v);

// Power series c0 + c1 z + ... + O(z^prec); the vector length is the precision.
class Series {
 public:
  Series() = default;
  Series(FieldPtr F, size_t prec) : F_(std::move(F)), c_(prec) {}
  Series(FieldPtr F, std::vector<Fe> c) : F_(std::move(F)), c_(std::move(c)) {}
  static Series from_poly(const Poly& p, size_t prec);
  static Series constant(const FieldPtr& F, const Fe& c, size_t prec);

  const FieldPtr& field() const { return F_; }
  size_t prec() const { return c_.size(); }
  const std::vector<Fe>& coeffs() const { return c_; }
  std::vector<Fe>& coeffs() { return c_; }
  const Fe& operator[](size_t i) const { return c_[i]; }
  Fe& operator[](size_t i) { return c_[i]; }
  // Index of the first nonzero coefficient, or prec() when all are zero.
  size_t valuation() const;
  bool is_zero() const { return valuation() == prec(); }

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scale(const Fe& s) const;
  bool operator==(const Series& o) const { return c_ == o.c_; }

  // Truncate, or zero-pad when the caller knows the tail is exact.
  Series resized(size_t n) const;
  Series slice(size_t from, size_t to) const;
  Series mul_z(size_t k) const;  // precision grows by k
  Series div_z(size_t k) const;  // requires valuation >= k; precision drops by k
  Series derivative() const;     // precision drops by one
  // Coefficients c[0], c[2], ... as a series in u = z^2.
  Series even_part() const;
  Series odd_part() const;  // (c[1], c[3], ...)
  Series lift(const FieldPtr& L) const;
  Poly to_poly() const;

 private:
  FieldPtr F_;
  std::vector<Fe> c_;
};

// Truncated product of two coefficient ranges, n output terms.
std::vector<Fe> mul_naive(const Field& F, const std::vector<Fe>& a,
                          const std::vector<Fe>& b, size_t n);
std::vector<Fe> mul_karatsuba(const Field& F, const std::vector<Fe>& a,
                              const std::vector<Fe>& b, size_t n);

Series series_inv(const Series& f);
// Square root with leading coefficient `branch` (branch^2 = f[0]).
Series series_sqrt(const Series& f, const Fe& branch);
// Ramified form: f = z^{2m} g with g(0) a square; returns z^m sqrt(g), with
// precision prec(f) - m.
Series series_sqrt_ramified(const Series& f, const Fe& branch);

class RationalFraction {
 public:
  RationalFraction() = default;
  // Reduces and makes the denominator monic; throws on zero denominator.
  RationalFraction(const Poly& num, const Poly& den);
  static RationalFraction from_poly(const Poly& p);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field() ? num_.field() : den_.field(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalFraction operator+(const RationalFraction& o) const;
  RationalFraction operator-(const RationalFraction& o) const;
  RationalFraction operator-() const;
  RationalFraction operator*(const RationalFraction& o) const;
  RationalFraction operator/(const RationalFraction& o) const;
  RationalFraction scale(const Fe& s) const;
  bool operator==(const RationalFraction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  // Value at a point; nullopt at a pole.
  std::optional<Fe> eval(const Fe& x, const Field* L = nullptr) const;
  // Expansion of num(u)/den(u) at the series u; the denominator must be a unit.
  Series eval(const Series& u) const;

 private:
  Poly num_, den_;
};

// N/D with deg N <= dn, deg D <= dd, D(0) != 0 and N/D = f mod z^{dn+dd+1}.
RationalFraction pade(const Series& f, int dn, int dd);

// G with G^2 = F when F is a perfect square; sign fixed so the leading
// coefficient of G is canonical.
std::optional<Poly> poly_sqrt(const Poly& F);

}  // namespace isogeny2
