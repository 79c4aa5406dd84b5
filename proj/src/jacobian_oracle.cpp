#include "isogeny2/jacobian_oracle.hpp"

namespace isogeny2 {

namespace {

Poly mod(const Poly& a, const Poly& m) { return a.divmod(m).second; }

}  // namespace

JacobianOracle::JacobianOracle(const CurveModel& C, const Fe& e) {
  K_ = C.field();
  e_ = e;
  const Field& F = *K_;
  Poly E = C.poly();
  if (!F.is_zero(E.eval(e))) throw Error(Errc::InvalidArgument, "e is not a root of E");
  // f(t) = t^6 E(e + 1/t): coefficient of t^k is the (6 - k)-th Taylor
  // coefficient of E at e.
  std::vector<Fe> taylor(7);
  Poly shifted = E.compose(Poly(K_, {e, F.one()}));
  for (int k = 0; k <= 6; ++k) taylor[k] = shifted.coeff(6 - k);
  f_ = Poly(K_, taylor);
  if (f_.degree() != 5) throw Error(Errc::SingularCurve, "e is not a simple root");
}

JacobianOracle::JacobianOracle(const CurveModel& C, std::mt19937_64& rng) {
  auto roots = poly_roots(C.poly(), rng);
  if (!roots.empty()) {
    *this = JacobianOracle(C, roots.front());
    return;
  }
  FieldPtr F = C.field();
  if (F->degree() * 2 > kMaxDegree) throw Error(Errc::NonGenericPosition, "no Weierstrass point");
  // A non-square of F gives the quadratic extension.
  Fe ns;
  do {
    ns = F->random(rng);
  } while (F->is_zero(ns) || F->is_square(ns));
  auto [L, t] = adjoin_sqrt(F, ns);
  (void)t;
  CurveModel CL = C.lift(L);
  roots = poly_roots(CL.poly(), rng);
  if (roots.empty()) throw Error(Errc::NonGenericPosition, "no Weierstrass point over F_q^2");
  *this = JacobianOracle(CL, roots.front());
}

MumfordDivisor JacobianOracle::identity() const {
  return {Poly::constant(K_, K_->one()), Poly(K_)};
}

MumfordDivisor JacobianOracle::point(const Fe& x, const Fe& y) const {
  const Field& F = *K_;
  Fe d = F.sub(x, e_);
  if (F.is_zero(d)) throw Error(Errc::NonGenericPosition, "point maps to infinity");
  Fe t = F.inv(d);
  Fe w = F.mul(y, F.mul(t, F.sqr(t)));
  return {Poly(K_, {F.neg(t), F.one()}), Poly::constant(K_, w)};
}

MumfordDivisor JacobianOracle::neg(const MumfordDivisor& D) const {
  if (D.a.degree() == 0) return D;
  return {D.a, mod(-D.b, D.a)};
}

MumfordDivisor JacobianOracle::reduce(Poly a, Poly b) const {
  while (a.degree() > 2) {
    Poly a2 = (f_ - b * b).divmod(a).first;
    Poly b2 = mod(-b, a2);
    a = a2.monic();
    b = mod(b2, a);
  }
  a = a.monic();
  return {a, mod(b, a)};
}

MumfordDivisor JacobianOracle::add(const MumfordDivisor& D1, const MumfordDivisor& D2) const {
  Poly d0, e1, e2;
  xgcd(D1.a, D2.a, d0, e1, e2);
  Poly d, c1, c2;
  xgcd(d0, D1.b + D2.b, d, c1, c2);
  Poly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
  Poly a = (D1.a * D2.a).divmod(d * d).first;
  Poly num = s1 * D1.a * D2.b + s2 * D2.a * D1.b + s3 * (D1.b * D2.b + f_);
  Poly b = mod(num.divmod(d).first, a);
  return reduce(a, b);
}

MumfordDivisor JacobianOracle::mul(int64_t m, const MumfordDivisor& D) const {
  if (m < 0) return mul(-m, neg(D));
  MumfordDivisor r = identity(), base = D;
  while (m) {
    if (m & 1) r = add(r, base);
    base = add(base, base);
    m >>= 1;
  }
  return r;
}

std::array<Fe, 4> oracle_rational_rep(const JacobianOracle& J, const CurvePoint& P, int64_t m,
                                      const CurvePoint& Q) {
  FieldPtr K = J.field();
  MumfordDivisor D = J.add(J.point(Q.u, Q.v), J.neg(J.point(P.u, P.v)));
  D = J.mul(m, D);
  if (D.a.degree() != 2) throw Error(Errc::NonGenericPosition, "m[Q - P] is not of degree 2");
  const Field& F = *K;
  Fe c1 = D.a.coeff(1), c0 = D.a.coeff(0);
  if (F.is_zero(c0)) throw Error(Errc::NonGenericPosition, "a point at infinity in the image");
  Fe disc = F.sub(F.sqr(c1), F.mul(F.from_int(4), c0));
  if (F.is_zero(disc)) throw Error(Errc::NonGenericPosition, "double point in the image");
  FieldPtr L = K;
  Fe sd;
  if (auto r = F.sqrt(disc)) {
    sd = *r;
  } else {
    if (K->degree() * 2 > kMaxDegree) throw Error(Errc::NonGenericPosition, "cannot split");
    auto [L2, t] = adjoin_sqrt(K, disc);
    L = L2;
    sd = t;
  }
  El h = El::rat(L, 1, 2), s(L, sd), c(L, c1), e(L, J.root());
  El t1 = (-c - s) * h, t2 = (-c + s) * h;
  auto wt = [&](const El& t) { return El(L, D.b.eval(t.v(), L.get())); };
  El x1 = e + t1.inv(), x2 = e + t2.inv();
  El y1 = wt(t1) / t1.pow(3), y2 = wt(t2) / t2.pow(3);
  El r = (y2 - y1) / (x2 - x1);
  // Symmetric values lie in K.
  return {(x1 + x2).v(), (x1 * x2).v(), (y1 * y2).v(), r.v()};
}

}  // namespace isogeny2
