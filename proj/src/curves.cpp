#include "isogeny2/curves.hpp"

#include <algorithm>
#include <map>

namespace isogeny2 {

CurveModel::CurveModel(BinaryForm sextic) : E_(std::move(sextic)) {
  if (E_.order() > 6) throw Error(Errc::InvalidArgument, "curve polynomial of degree > 6");
  E_.a.resize(7);
  const Field& F = *E_.F;
  if (F.is_zero(E_.a[6]) && F.is_zero(E_.a[5])) {
    throw Error(Errc::SingularCurve, "degree of E below 5");
  }
  if (F.is_zero(igusa_clebsch(E_).I10)) throw Error(Errc::SingularCurve, "discriminant vanishes");
}

CurveModel CurveModel::from_ints(const FieldPtr& F, const std::vector<int64_t>& a) {
  return CurveModel(make_form(F, a));
}

bool CurveModel::contains(const Fe& x, const Fe& y, const Field* L) const {
  const Field& F = L ? *common_field(L, E_.F.get()) : *E_.F;
  return F.compare(F.sqr(y), eval(x, &F)) == 0;
}

CurveModel CurveModel::lift(const FieldPtr& L) const {
  common_field(L.get(), E_.F.get());
  CurveModel c = *this;
  c.E_.F = L;
  return c;
}

std::vector<uint64_t> CurveModel::flat_coeffs() const {
  std::vector<uint64_t> out;
  for (auto& c : E_.a) {
    auto v = E_.F->coeffs(c);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

Gl2Result gl2_transform(const CurveModel& C, const Mat& r) {
  if (!r.invertible()) throw Error(Errc::SingularMatrix, "gl2_transform needs invertible r");
  BinaryForm f = C.sextic();
  if (r.field() != f.F) {
    f.F = common_field(r.field().get(), f.F.get()) == r.field().get() ? r.field() : f.F;
  }
  return {CurveModel(gl2_act_sextic(r.lift(f.F), f)), r.transpose().lift(f.F)};
}

Mat weierstrass_to_origin(const CurveModel& C, const Fe& u0) {
  const FieldPtr& F = C.field();
  if (!F->is_zero(C.eval(u0))) throw Error(Errc::InvalidArgument, "not a Weierstrass point");
  Fe l = F->inv(C.poly().derivative().eval(u0));
  Mat r(F, 2, 2);
  r.at(0, 0) = F->sqr(l);
  r.at(1, 0) = F->mul(l, u0);
  r.at(1, 1) = l;
  return r;
}

// ---------------------------------------------------------------- Mestre

namespace {

struct Term {
  int e[4];  // exponents of A, B, C, D
  int num, den;
};

struct Entry {
  int idx[3];  // conic entries use the first two
  std::vector<Term> terms;
};

const std::vector<Entry>& conic_table() {
  static const std::vector<Entry> t = {
      {{0, 0, 0}, {{{1, 1, 0, 0}, 1, 3}, {{0, 0, 1, 0}, 2, 1}}},
      {{0, 1, 0}, {{{0, 2, 0, 0}, 2, 3}, {{1, 0, 1, 0}, 2, 3}}},
      {{0, 2, 0}, {{{0, 0, 0, 1}, 1, 1}}},
      {{1, 1, 0}, {{{0, 0, 0, 1}, 1, 1}}},
      {{1, 2, 0}, {{{0, 3, 0, 0}, 1, 3}, {{1, 1, 1, 0}, 4, 9}, {{0, 0, 2, 0}, 2, 3}}},
      {{2, 2, 0}, {{{0, 2, 1, 0}, 2, 9}, {{1, 0, 2, 0}, 2, 9}, {{0, 1, 0, 1}, 1, 2}}},
  };
  return t;
}

const std::vector<Entry>& cubic_table() {
  static const std::vector<Entry> t = {
      {{0, 0, 0}, {{{2, 0, 1, 0}, 2, 9}, {{0, 1, 1, 0}, -4, 3}, {{0, 0, 0, 1}, 2, 1}}},
      {{0, 0, 1},
       {{{0, 3, 0, 0}, 2, 9}, {{1, 1, 1, 0}, 4, 9}, {{0, 0, 2, 0}, 4, 3}, {{1, 0, 0, 1}, 1, 3}}},
      {{0, 0, 2},
       {{{1, 3, 0, 0}, 1, 9},
        {{2, 1, 1, 0}, 4, 27},
        {{0, 2, 1, 0}, 4, 9},
        {{1, 0, 2, 0}, 2, 3},
        {{0, 1, 0, 1}, 1, 3}}},
      {{0, 1, 1},
       {{{1, 3, 0, 0}, 1, 9},
        {{2, 1, 1, 0}, 4, 27},
        {{0, 2, 1, 0}, 4, 9},
        {{1, 0, 2, 0}, 2, 3},
        {{0, 1, 0, 1}, 1, 3}}},
      {{0, 1, 2},
       {{{0, 4, 0, 0}, 1, 9},
        {{1, 2, 1, 0}, 2, 9},
        {{2, 0, 2, 0}, 2, 27},
        {{0, 1, 2, 0}, 2, 9},
        {{1, 1, 0, 1}, 1, 6},
        {{0, 0, 1, 1}, 2, 3}}},
      {{0, 2, 2},
       {{{1, 4, 0, 0}, 1, 18},
        {{2, 2, 1, 0}, 2, 27},
        {{0, 3, 1, 0}, 8, 27},
        {{1, 1, 2, 0}, 13, 27},
        {{0, 0, 3, 0}, 4, 9},
        {{0, 2, 0, 1}, 1, 6},
        {{1, 0, 1, 1}, 1, 9}}},
      {{1, 1, 1},
       {{{0, 4, 0, 0}, 1, 3},
        {{1, 2, 1, 0}, 2, 3},
        {{2, 0, 2, 0}, 8, 27},
        {{0, 1, 2, 0}, 2, 9},
        {{0, 0, 1, 1}, -1, 3}}},
      {{1, 1, 2},
       {{{0, 3, 1, 0}, -1, 27},
        {{1, 1, 2, 0}, -2, 27},
        {{0, 0, 3, 0}, -2, 9},
        {{0, 2, 0, 1}, 1, 2},
        {{1, 0, 1, 1}, 4, 9}}},
      {{1, 2, 2},
       {{{0, 5, 0, 0}, 1, 18},
        {{1, 3, 1, 0}, 1, 9},
        {{2, 1, 2, 0}, 4, 81},
        {{0, 2, 2, 0}, 1, 27},
        {{0, 1, 1, 1}, -1, 18},
        {{0, 0, 0, 2}, 1, 2}}},
      {{2, 2, 2},
       {{{0, 4, 1, 0}, -1, 18},
        {{1, 2, 2, 0}, -1, 9},
        {{2, 0, 3, 0}, -4, 81},
        {{0, 1, 3, 0}, -1, 27},
        {{0, 3, 0, 1}, 1, 4},
        {{1, 1, 1, 1}, 1, 3},
        {{0, 0, 2, 1}, 5, 9}}},
  };
  return t;
}

El eval_terms(const FieldPtr& F, const std::vector<Term>& terms, const std::array<El, 4>& v) {
  El s = El::of(F, 0);
  for (auto& t : terms) {
    El m = El::rat(F, t.num, t.den);
    for (int i = 0; i < 4; ++i) m *= v[i].pow(t.e[i]);
    s += m;
  }
  return s;
}

}  // namespace

CurveModel mestre_reconstruct(const FieldPtr& F, const std::array<Fe, 3>& j,
                              std::mt19937_64& rng) {
  if (F->is_zero(j[2])) throw Error(Errc::NonGenericInvariants, "j3 = 0");
  auto c = [&](int64_t v) { return El::of(F, v); };
  El j1(F, j[0]), j2(F, j[1]), j3(F, j[2]);
  // Invariants in the normalization I4 = j3, I10 = j3^2.
  El I4 = j3, I10 = j3.sqr(), I2 = j2, I6p = j1 * j3;
  El I6 = (I2 * I4 - c(2) * I6p) / c(3);
  El A = -I2 / c(120);
  El B = (I4 + c(720) * A.sqr()) / c(6750);
  El C = (I6 - c(8640) * A.pow(3) + c(108000) * A * B) / c(202500);
  El rest = c(-62208) * A.pow(5) + c(972000) * A.pow(3) * B + c(1620000) * A.sqr() * C -
            c(3037500) * A * B.sqr() - c(6075000) * B * C;
  El D = (I10 - rest) / c(-4556250);
  std::array<El, 4> abcd = {A, B, C, D};

  Mat L(F, 3, 3);
  for (auto& e : conic_table()) {
    Fe v = eval_terms(F, e.terms, abcd).v();
    L.at(e.idx[0], e.idx[1]) = v;
    L.at(e.idx[1], e.idx[0]) = v;
  }
  if (!L.invertible()) throw Error(Errc::NonGenericInvariants, "Mestre conic is degenerate");
  std::map<std::array<int, 3>, El> cubic;
  for (auto& e : cubic_table()) {
    cubic.emplace(std::array<int, 3>{e.idx[0], e.idx[1], e.idx[2]},
                  eval_terms(F, e.terms, abcd));
  }

  auto Lof = [&](int i, int k) { return El(F, L.at(i, k)); };
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::array<El, 3> P0;
    if (F->is_zero(L.at(2, 2))) {
      P0 = {c(0), c(0), c(1)};
    } else {
      El x1(F, F->random(rng)), x2(F, F->random(rng));
      El a = Lof(2, 2);
      El b = c(2) * (Lof(0, 2) * x1 + Lof(1, 2) * x2);
      El cc = Lof(0, 0) * x1.sqr() + c(2) * Lof(0, 1) * x1 * x2 + Lof(1, 1) * x2.sqr();
      auto d = (b.sqr() - c(4) * a * cc).sqrt();
      if (!d) continue;
      P0 = {x1, x2, (-b + *d) / (c(2) * a)};
    }
    // Lines through P0: w = e1 + t e2, X(t) = -L(w) P0 + 2 B(P0, w) w.
    std::array<Poly, 3> w;
    const bool first_zero = P0[0].is_zero();
    for (int i = 0; i < 3; ++i) {
      Fe e1 = (i == (first_zero ? 1 : 0)) ? F->one() : Fe{};
      Fe e2 = i == 2 ? F->one() : Fe{};
      w[i] = Poly(F, {e1, e2});
    }
    Poly Lw(F), BPw(F);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        Lw = Lw + (w[i] * w[k]).scale(L.at(i, k));
        BPw = BPw + w[k].scale(F->mul(L.at(i, k), P0[i].v()));
      }
    std::array<Poly, 3> X;
    for (int i = 0; i < 3; ++i) {
      X[i] = Lw.scale(F->neg(P0[i].v())) + (BPw * w[i]).scale(F->from_int(2));
    }
    Poly f(F);
    for (auto& [idx, coef] : cubic) {
      int cnt[3] = {0, 0, 0};
      for (int t : idx) ++cnt[t];
      int mult = 6;
      for (int t : cnt) mult /= (t == 3 ? 6 : t == 2 ? 2 : 1);
      f = f + (X[idx[0]] * X[idx[1]] * X[idx[2]]).scale((mult * coef).v());
    }
    if (f.degree() < 5 || f.degree() > 6) continue;
    std::vector<Fe> a(7);
    for (int i = 0; i <= f.degree(); ++i) a[i] = f.coeff(i);
    BinaryForm form{F, a};
    if (F->is_zero(igusa_clebsch(form).I10)) continue;
    CurveModel out(form);
    if (igusa_invariants(form) != j) continue;
    return out;
  }
  throw Error(Errc::NonGenericInvariants, "no Mestre model found");
}

// ---------------------------------------------------------------- expansions

LocalExpansion local_expansion(const CurveModel& C, const CurvePoint& P, size_t prec,
                               const FieldPtr& Lin) {
  if (P.infinity) throw Error(Errc::PointAtInfinity, "base point at infinity");
  const FieldPtr& L = Lin ? Lin : C.field();
  const Field& F = *L;
  Poly E = C.poly().lift(L);
  if (!C.contains(P.u, P.v, &F)) throw Error(Errc::InvalidArgument, "point not on the curve");
  LocalExpansion out;
  out.P = P;
  if (!F.is_zero(P.v)) {
    out.kind = ChartKind::Generic;
    out.u = Series(L, prec);
    out.u[0] = P.u;
    if (prec > 1) out.u[1] = F.one();
    out.v = series_sqrt(E.eval(out.u), P.v);
    out.D = series_inv(out.v);
    out.branch = P.v;
    return out;
  }
  // u = u0 + z^2, v = z w(z), w^2 = E(u0 + z^2)/z^2.
  out.kind = ChartKind::Weierstrass;
  Fe d1 = E.derivative().eval(P.u);
  auto b = F.sqrt(d1);
  if (!b) throw Error(Errc::NonSquareBranch, "E'(u0) is not a square");
  out.branch = *b;
  out.u = Series(L, prec);
  out.u[0] = P.u;
  if (prec > 2) out.u[2] = F.one();
  Series e = E.eval(out.u.resized(prec + 2));
  Series w = series_sqrt(e.div_z(2), *b).resized(prec);
  out.v = w.mul_z(1).resized(prec);
  out.D = series_inv(w).scale(F.from_int(2));
  return out;
}

// ---------------------------------------------------------------- base point

namespace {

struct Probe {
  bool ok = false;
  Fe x0;
  Fe e;  // E_C'(x0)
};

Probe probe(const Field& L, const Mat& m, const CurveModel& Cp, const Fe& u0) {
  Probe pr;
  Fe den = L.add(L.mul(m.at(1, 0), u0), m.at(1, 1));
  if (L.is_zero(den)) return pr;
  pr.x0 = L.div(L.add(L.mul(m.at(0, 0), u0), m.at(0, 1)), den);
  pr.e = Cp.eval(pr.x0, &L);
  pr.ok = !L.is_zero(pr.e);
  return pr;
}

}  // namespace

BasePoint find_base_point(const CurveModel& C, const Mat& dphi, const CurveModel& Cp,
                          std::mt19937_64& rng, bool allow_weierstrass,
                          const std::optional<Fe>& prefer_u) {
  if (!dphi.invertible()) throw Error(Errc::SingularMatrix, "tangent matrix is singular");
  FieldPtr L = dphi.field();
  if (!L->contains(*C.field()) || !L->contains(*Cp.field())) {
    throw Error(Errc::FieldMismatch, "tangent matrix must live over the curves' field");
  }
  const Field& F = *L;
  Poly E = C.poly().lift(L);
  Poly dE = E.derivative();
  std::vector<Fe> wpts;
  if (allow_weierstrass) {
    wpts = poly_roots(E, rng);
    // Roots in the prime field first.
    std::stable_partition(wpts.begin(), wpts.end(),
                          [&](const Fe& x) { return F.in_prime_field(x); });
    if (prefer_u) {
      std::stable_partition(wpts.begin(), wpts.end(), [&](const Fe& x) { return x == *prefer_u; });
    }
  }

  for (const Fe& u0 : wpts) {
    if (!F.is_square(dE.eval(u0))) continue;
    Probe pr = probe(F, dphi, Cp, u0);
    if (!pr.ok) continue;
    auto y0 = F.sqrt(pr.e);
    if (!y0) continue;
    return {{u0, Fe{}}, {pr.x0, *y0}, true, L};
  }
  for (int trial = 0; trial < 200; ++trial) {
    Fe u0 = C.field()->random(rng);
    Fe e = E.eval(u0);
    if (F.is_zero(e) || !F.is_square(e)) continue;
    Probe pr = probe(F, dphi, Cp, u0);
    if (!pr.ok) continue;
    auto y0 = F.sqrt(pr.e);
    if (!y0) continue;
    return {{u0, *F.sqrt(e)}, {pr.x0, *y0}, false, L};
  }
  // One quadratic extension for y0.
  if (L->degree() * 2 <= kMaxDegree) {
    for (const Fe& u0 : wpts) {
      if (!F.is_square(dE.eval(u0))) continue;
      Probe pr = probe(F, dphi, Cp, u0);
      if (!pr.ok) continue;
      auto [L2, t] = adjoin_sqrt(L, pr.e);
      return {{u0, Fe{}}, {pr.x0, t}, true, L2};
    }
  }
  throw Error(Errc::NoGenericPoint, "no base point of generic type found");
}

}  // namespace isogeny2
