#pragma once

// Dual numbers a + b eps, eps^2 = 0, for exact first derivatives.

#include "isogeny2/field.hpp"

namespace isogeny2 {

struct Dual {
  El a, b;

  static Dual constant(const El& x) { return {x, El(x.field(), Fe{})}; }
  static Dual variable(const El& x) { return {x, El(x.field(), x.field()->one())}; }

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend Dual operator/(const Dual& x, const Dual& y) {
    El inv = y.a.inv();
    return {x.a * inv, (x.b * y.a - x.a * y.b) * inv * inv};
  }
  friend Dual operator*(const El& s, const Dual& x) { return {s * x.a, s * x.b}; }
  Dual operator-() const { return {-a, -b}; }
  Dual pow(int e) const {
    Dual r = constant(El(a.field(), a.field()->one()));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
};

}  // namespace isogeny2
