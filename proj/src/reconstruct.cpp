#include "isogeny2/reconstruct.hpp"

#include <algorithm>

namespace isogeny2 {

// ------------------------------------------------------------ curve algebra

CurvePoly cp_mul(const CurvePoly& x, const CurvePoly& y, const Poly& E) {
  return {x.a * y.a + E * (x.b * y.b), x.a * y.b + x.b * y.a};
}

CurvePoly cp_conj(const CurvePoly& x) { return {x.a, -x.b}; }

Poly cp_norm(const CurvePoly& x, const Poly& E) { return x.a * x.a - E * (x.b * x.b); }

namespace {

bool cp_eq(const CurvePoly& x, const CurvePoly& y) { return x.a == y.a && x.b == y.b; }

CurvePoly cp_add(const CurvePoly& x, const CurvePoly& y) { return {x.a + y.a, x.b + y.b}; }
CurvePoly cp_sub(const CurvePoly& x, const CurvePoly& y) { return {x.a - y.a, x.b - y.b}; }
CurvePoly cp_scale(const CurvePoly& x, const Poly& c) { return {x.a * c, x.b * c}; }

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

}  // namespace

std::optional<CurvePoly> cp_sqrt(const CurvePoly& x, const Poly& E) {
  const FieldPtr& F = E.field();
  if (x.a.is_zero() && x.b.is_zero()) return x;
  auto n = poly_sqrt(cp_norm(x, E));
  if (!n) return std::nullopt;
  Fe half = F->inv(F->from_int(2));
  for (int sgn = 0; sgn < 2; ++sgn) {
    Poly nn = sgn ? -*n : *n;
    Poly a2 = (x.a + nn).scale(half);
    auto a = poly_sqrt(a2);
    if (!a) continue;
    CurvePoly r;
    if (!a->is_zero()) {
      auto b = exact_div(x.b, a->scale(F->from_int(2)));
      if (!b) continue;
      r = {*a, *b};
    } else {
      auto b2 = exact_div((x.a - nn).scale(half), E);
      if (!b2) continue;
      auto b = poly_sqrt(*b2);
      if (!b) continue;
      r = {Poly(F), *b};
    }
    if (cp_eq(cp_mul(r, r, E), x)) return r;
  }
  return std::nullopt;
}

std::optional<Fe> CurveFunction::eval(const Fe& u, const Fe& v, const Field* L) const {
  auto a = even.eval(u, L);
  auto b = odd.eval(u, L);
  if (!a || !b) return std::nullopt;
  const Field* K = L ? L : even.field().get();
  return K->add(*a, K->mul(v, *b));
}

Series CurveFunction::eval(const Series& u, const Series& v) const {
  return even.eval(u) + v * odd.eval(u);
}

// ------------------------------------------------------------ degrees

DegreeBounds degree_bounds_siegel(int ell) { return {4 * ell, 4 * ell, 12 * ell, 8 * ell}; }

DegreeBounds degree_bounds_hilbert(int64_t trace) {
  int t = static_cast<int>(trace);
  return {2 * t, 2 * t, 6 * t, 4 * t};
}

DegreeBounds degree_bounds_endomorphism(int m) { return degree_bounds_siegel(m * m); }

size_t required_precision(const DegreeBounds& b, ChartKind kind) {
  return static_cast<size_t>(kind == ChartKind::Weierstrass ? 2 * b.ds + 7 : 6 * b.ds + 7);
}

// ------------------------------------------------------------ s and p

namespace {

// P(u - u0) from P(z).
Poly unshift(const Poly& P, const Fe& u0) {
  const FieldPtr& F = P.field();
  if (P.is_zero()) return P;
  Poly lin(F, {F->neg(u0), F->one()});
  return P.compose(lin);
}

RationalFraction unshift(const RationalFraction& f, const Fe& u0) {
  return RationalFraction(unshift(f.num(), u0), unshift(f.den(), u0));
}

Series z_series(const FieldPtr& L, size_t n) {
  Series z(L, n);
  if (n > 1) z[1] = L->one();
  return z;
}

CurveFunction reconstruct_weierstrass(const Series& f, const FieldPtr& L, const Fe& u0, int d,
                                      const char* name) {
  if (!f.odd_part().is_zero()) {
    throw Error(Errc::CandidateRejected, std::string(name) + " has a nonzero odd part");
  }
  Series g = f.even_part();
  int half = d / 2;
  if (g.prec() < static_cast<size_t>(2 * half + 1)) {
    throw Error(Errc::PrecisionTooLow, std::string(name) + ": precision too low for the bound");
  }
  RationalFraction r;
  try {
    r = pade(g, half, half);
  } catch (const Error& e) {
    if (e.code() != Errc::NoSolution) throw;
    throw Error(Errc::CandidateRejected, std::string(name) + ": no fraction of the prescribed degree");
  }
  if (r.eval(z_series(L, g.prec())) != g) {
    throw Error(Errc::CandidateRejected, std::string(name) + ": fraction does not re-expand to the series");
  }
  return {unshift(r, u0), RationalFraction(Poly(L), Poly::constant(L, L->one()))};
}

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(const Field& F, std::vector<std::vector<Fe>>& M, int ncols) {
  std::vector<int> piv;
  size_t row = 0;
  for (int c = 0; c < ncols && row < M.size(); ++c) {
    size_t sel = row;
    while (sel < M.size() && F.is_zero(M[sel][c])) ++sel;
    if (sel == M.size()) continue;
    std::swap(M[row], M[sel]);
    Fe inv = F.inv(M[row][c]);
    for (int k = c; k < ncols; ++k) M[row][k] = F.mul(M[row][k], inv);
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == row || F.is_zero(M[r][c])) continue;
      Fe f = M[r][c];
      for (int k = c; k < ncols; ++k) M[r][k] = F.sub(M[r][k], F.mul(f, M[row][k]));
    }
    piv.push_back(c);
    ++row;
  }
  M.resize(row);
  return piv;
}

// Kernel basis of M (rows x ncols), given in reduced echelon form.
std::vector<std::vector<Fe>> kernel(const Field& F, std::vector<std::vector<Fe>> M, int ncols) {
  auto piv = echelon(F, M, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Fe>> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Fe> v(ncols);
    v[f] = F.one();
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(M[r][f]);
    out.push_back(v);
  }
  return out;
}

// B(z) f(z) = N1(z) + v(z) N2(z) mod z^nu with deg B <= d, deg N_i <= 2d and
// deg B minimal.
CurveFunction reconstruct_generic(const Series& f, const LocalExpansion& chart, const FieldPtr& L,
                                  int d, const char* name) {
  const Field& F = *L;
  size_t nu = f.prec();
  if (nu < static_cast<size_t>(6 * d + 7)) {
    throw Error(Errc::PrecisionTooLow, std::string(name) + ": precision too low for the bound");
  }
  // Columns: B_d..B_0, N1_0..N1_2d, N2_0..N2_2d.
  int nb = d + 1, nn = 2 * d + 1, ncols = nb + 2 * nn;
  std::vector<std::vector<Fe>> M(nu, std::vector<Fe>(ncols));
  const Series& v = chart.v;
  for (size_t k = 0; k < nu; ++k) {
    for (int j = 0; j <= d && static_cast<size_t>(j) <= k; ++j) M[k][d - j] = f[k - j];
    if (k < static_cast<size_t>(nn)) M[k][nb + k] = F.neg(F.one());
    for (int j = 0; j < nn && static_cast<size_t>(j) <= k; ++j) M[k][nb + nn + j] = F.neg(v[k - j]);
  }
  auto ker = kernel(F, std::move(M), ncols);
  if (ker.empty()) {
    throw Error(Errc::CandidateRejected, std::string(name) + ": no fraction of the prescribed degree");
  }
  // The element of minimal deg B is the last row of the echelonized kernel.
  echelon(F, ker, ncols);
  const auto& sol = ker.back();
  std::vector<Fe> b(nb), n1(nn), n2(nn);
  for (int j = 0; j <= d; ++j) b[j] = sol[d - j];
  for (int j = 0; j < nn; ++j) {
    n1[j] = sol[nb + j];
    n2[j] = sol[nb + nn + j];
  }
  Poly B(L, b);
  if (B.is_zero() || F.is_zero(B.coeff(0))) {
    throw Error(Errc::CandidateRejected, std::string(name) + ": degenerate denominator");
  }
  const Fe& u0 = chart.P.u;
  return {unshift(RationalFraction(Poly(L, n1), B), u0), unshift(RationalFraction(Poly(L, n2), B), u0)};
}

}  // namespace

SPResult reconstruct_sp(const LiftProblem& pb, const LocalLift& lift, const DegreeBounds& b) {
  Series s = lift.x1 + lift.x2;
  Series p = lift.x1 * lift.x2;
  if (pb.chart.kind == ChartKind::Weierstrass) {
    return {reconstruct_weierstrass(s, pb.L, pb.chart.P.u, b.ds, "s"),
            reconstruct_weierstrass(p, pb.L, pb.chart.P.u, b.dp, "p")};
  }
  return {reconstruct_generic(s, pb.chart, pb.L, b.ds, "s"),
          reconstruct_generic(p, pb.chart, pb.L, b.dp, "p")};
}

// ------------------------------------------------------------ q and r

namespace {

Poly lcm(const Poly& a, const Poly& b) { return (a * b).divmod(gcd(a, b)).first.monic(); }

CurvePoly over(const CurveFunction& f, const Poly& B) {
  return {f.even.num() * B.divmod(f.even.den()).first, f.odd.num() * B.divmod(f.odd.den()).first};
}

Poly ppow(const Poly& x, int e) {
  Poly r = Poly::constant(x.field(), x.field()->one());
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

Series cp_series(const CurvePoly& x, const LocalExpansion& ch) {
  return x.a.eval(ch.u) + ch.v * x.b.eval(ch.u);
}

CurveFunction to_function(const CurvePoly& x, const Poly& den) {
  return {RationalFraction(x.a, den), RationalFraction(x.b, den)};
}

struct Homogenized {
  Poly B;
  CurvePoly S, PB;             // s B and p B^2
  std::vector<CurvePoly> pw;   // power sums of X_i = x_i B, up to 6
  Poly Ep;
  Poly E;
};

Homogenized homogenize(const SPResult& sp, const Poly& E, const Poly& Ep) {
  Homogenized h;
  h.E = E;
  h.Ep = Ep;
  h.B = lcm(lcm(sp.s.even.den(), sp.s.odd.den()), lcm(sp.p.even.den(), sp.p.odd.den()));
  h.S = over(sp.s, h.B);
  h.PB = cp_scale(over(sp.p, h.B), h.B);
  const FieldPtr& F = E.field();
  h.pw.push_back({Poly::constant(F, F->from_int(2)), Poly(F)});
  h.pw.push_back(h.S);
  for (int k = 2; k <= 6; ++k) {
    h.pw.push_back(cp_sub(cp_mul(h.S, h.pw[k - 1], E), cp_mul(h.PB, h.pw[k - 2], E)));
  }
  return h;
}

// B^12 E(x1) E(x2).
CurvePoly sym_product(const Homogenized& h) {
  const FieldPtr& F = h.E.field();
  const Field& K = *F;
  CurvePoly acc{Poly(F), Poly(F)};
  std::vector<CurvePoly> pbp{{Poly::constant(F, K.one()), Poly(F)}};
  for (int i = 1; i <= 6; ++i) pbp.push_back(cp_mul(pbp.back(), h.PB, h.E));
  for (int i = 0; i <= 6; ++i) {
    Fe ei = h.Ep.coeff(i);
    if (K.is_zero(ei)) continue;
    for (int j = i; j <= 6; ++j) {
      Fe ej = h.Ep.coeff(j);
      if (K.is_zero(ej)) continue;
      Poly c = Poly::constant(F, K.mul(ei, ej)) * ppow(h.B, 12 - i - j);
      CurvePoly term = j == i ? pbp[i] : cp_mul(pbp[i], h.pw[j - i], h.E);
      acc = cp_add(acc, cp_scale(term, c));
    }
  }
  return acc;
}

// B^6 (E(x1) + E(x2)).
CurvePoly sym_sum(const Homogenized& h) {
  const FieldPtr& F = h.E.field();
  CurvePoly acc{Poly(F), Poly(F)};
  for (int k = 0; k <= 6; ++k) {
    Fe e = h.Ep.coeff(k);
    if (F->is_zero(e)) continue;
    acc = cp_add(acc, cp_scale(h.pw[k], Poly::constant(F, e) * ppow(h.B, 6 - k)));
  }
  return acc;
}

}  // namespace

QRResult deduce_qr(const LiftProblem& pb, const LocalLift& lift, const SPResult& sp,
                   const CurveModel& C) {
  const FieldPtr& L = pb.L;
  Poly E = C.poly().lift(L);
  Homogenized h = homogenize(sp, E, pb.Ep);
  const LocalExpansion& ch = pb.chart;
  size_t n = lift.prec;
  auto ser = [&](const CurvePoly& x) { return cp_series(x, ch).resized(n); };

  CurvePoly Q2 = sym_product(h);
  auto Qh = cp_sqrt(Q2, E);
  if (!Qh) throw Error(Errc::NotAPerfectSquare, "E(x1) E(x2) is not a square");
  Poly B6 = ppow(h.B, 6);
  Series target_q = (lift.y1 * lift.y2) * B6.eval(ch.u).resized(n);
  Series got_q = ser(*Qh);
  if (got_q != target_q) {
    Qh = CurvePoly{-Qh->a, -Qh->b};
    if (ser(*Qh) != target_q) throw Error(Errc::SignMismatch, "q does not match y1 y2");
  }

  CurvePoly num = cp_sub(sym_sum(h), cp_scale(*Qh, Poly::constant(L, L->from_int(2))));
  const Field& K = *L;
  CurvePoly delta = cp_sub(cp_mul(h.S, h.S, E), cp_scale(h.PB, Poly::constant(L, K.from_int(4))));
  Poly nd = cp_norm(delta, E);
  if (nd.is_zero()) throw Error(Errc::CandidateRejected, "x1 = x2 identically");
  CurvePoly X = cp_scale(cp_mul(num, cp_conj(delta), E), nd);
  auto Rh = cp_sqrt(X, E);
  if (!Rh) throw Error(Errc::NotAPerfectSquare, "r^2 is not a square");
  Poly rden = ppow(h.B, 2) * nd;
  Series target_r = (lift.y2 - lift.y1) * rden.eval(ch.u).resized(n);
  Series dx = lift.x2 - lift.x1;
  if (ser(*Rh) * dx != target_r) {
    Rh = CurvePoly{-Rh->a, -Rh->b};
    if (ser(*Rh) * dx != target_r) throw Error(Errc::SignMismatch, "r does not match the lift");
  }
  return {to_function(*Qh, B6), to_function(*Rh, rden)};
}

// ------------------------------------------------------------ evaluation

std::optional<std::array<Fe, 4>> eval_rep(const RationalRepresentation& rep, const Fe& u,
                                          const Fe& v, const Field* L) {
  std::array<Fe, 4> out;
  const CurveFunction* f[4] = {&rep.s, &rep.p, &rep.q, &rep.r};
  for (int i = 0; i < 4; ++i) {
    auto x = f[i]->eval(u, v, L);
    if (!x) return std::nullopt;
    out[i] = *x;
  }
  return out;
}

// ------------------------------------------------------------ verification

namespace {

CurvePoly cp_of(const CurveFunction& f, Poly& den) {
  den = lcm(f.even.den(), f.odd.den());
  return over(f, den);
}

// deg of f as a map C -> P^1: deg_u of Norm(f - c) for generic c.
int function_degree(const CurveFunction& f, const Poly& E, std::mt19937_64& rng) {
  const FieldPtr& F = E.field();
  Poly den;
  CurvePoly x = cp_of(f, den);
  int best = 0;
  for (int t = 0; t < 3; ++t) {
    Fe c = F->random(rng);
    CurvePoly y = {x.a - den.scale(c), x.b};
    RationalFraction n(cp_norm(y, E), den * den);
    best = std::max({best, n.num().degree(), n.den().degree()});
  }
  return best;
}

std::optional<std::pair<FieldPtr, Fe>> root_of(const FieldPtr& K, const Fe& a) {
  if (auto r = K->sqrt(a)) return std::make_pair(K, *r);
  if (K->degree() * 2 > kMaxDegree) return std::nullopt;
  return adjoin_sqrt(K, a);
}

}  // namespace

VerificationReport verify_rational_rep(const RationalRepresentation& rep, const Mat& dphi,
                                       const DegreeBounds& bounds, size_t nu,
                                       std::mt19937_64& rng, int npoints) {
  VerificationReport rpt;
  const FieldPtr& L = rep.Cp.field();
  const Field& K = *L;
  Poly E = rep.C.poly().lift(L);
  Poly Ep = rep.Cp.poly().lift(L);

  // (a) q^2 = E(x1) E(x2) and r^2 (s^2 - 4p) = E(x1) + E(x2) - 2q in k(C).
  {
    SPResult sp{rep.s, rep.p};
    Homogenized h = homogenize(sp, E, Ep);
    Poly qd, rd;
    CurvePoly q = cp_of(rep.q, qd), r = cp_of(rep.r, rd);
    // q = q/qd, B^12 q^2 qd^2 ... compare after clearing denominators.
    Poly B6 = ppow(h.B, 6);
    CurvePoly lhs1 = cp_scale(cp_mul(q, q, E), ppow(h.B, 12));
    CurvePoly rhs1 = cp_scale(sym_product(h), qd * qd);
    rpt.rr1 = cp_eq(lhs1, rhs1);
    CurvePoly delta = cp_sub(cp_mul(h.S, h.S, E), cp_scale(h.PB, Poly::constant(L, K.from_int(4))));
    // r^2 Delta / B^2 = sum / B^6 - 2 q  ->  r^2 Delta B^4 qd = (sum qd - 2 q B^6) rd^2
    CurvePoly lhs2 = cp_scale(cp_mul(cp_mul(r, r, E), delta, E), ppow(h.B, 4) * qd);
    CurvePoly rhs2 = cp_scale(cp_sub(cp_scale(sym_sum(h), qd),
                                     cp_scale(q, B6 * Poly::constant(L, K.from_int(2)))),
                              rd * rd);
    rpt.rr2 = cp_eq(lhs2, rhs2);
    if (!rpt.rr1) rpt.detail += "q^2 identity fails; ";
    if (!rpt.rr2) rpt.detail += "r^2 identity fails; ";
  }

  // (c) degree bounds.
  {
    int ds = function_degree(rep.s, E, rng), dp = function_degree(rep.p, E, rng);
    int dq = function_degree(rep.q, E, rng), dr = function_degree(rep.r, E, rng);
    rpt.degrees = ds <= bounds.ds && dp <= bounds.dp && dq <= bounds.dq && dr <= bounds.dr;
    if (!rpt.degrees) {
      rpt.detail += "degrees (" + std::to_string(ds) + "," + std::to_string(dp) + "," +
                    std::to_string(dq) + "," + std::to_string(dr) + ") exceed bounds; ";
    }
  }

  // (b) differential system at a second, generic point.
  {
    Mat m = dphi.lift(L);
    for (int attempt = 0; attempt < 100 && !rpt.second_chart; ++attempt) {
      Fe u2 = K.random(rng);
      Fe e = E.eval(u2);
      auto v2 = K.sqrt(e);
      if (!v2 || K.is_zero(e)) continue;
      auto vals = eval_rep(rep, u2, *v2);
      if (!vals) continue;
      LocalExpansion ch = local_expansion(rep.C.lift(L), {u2, *v2, false}, nu, L);
      Series S = rep.s.eval(ch.u, ch.v), P = rep.p.eval(ch.u, ch.v);
      Series Q = rep.q.eval(ch.u, ch.v), R = rep.r.eval(ch.u, ch.v);
      Series disc = S * S - P.scale(K.from_int(4));
      auto d0 = K.sqrt(disc[0]);
      if (!d0 || K.is_zero(disc[0])) continue;
      Series dl = series_sqrt(disc, *d0);
      Fe half = K.inv(K.from_int(2));
      Series x1 = (S - dl).scale(half), x2 = (S + dl).scale(half);
      Series Rd = R * dl;
      Series t2 = Rd * Rd + Q.scale(K.from_int(4));
      auto t0 = K.sqrt(t2[0]);
      if (!t0 || K.is_zero(t2[0])) continue;
      bool matched = false;
      for (int sg = 0; sg < 2 && !matched; ++sg) {
        Series t = series_sqrt(t2, sg ? K.neg(*t0) : *t0);
        Series y1 = (t - Rd).scale(half), y2 = (t + Rd).scale(half);
        if (y1 * y1 != Ep.eval(x1) || y2 * y2 != Ep.eval(x2)) continue;
        matched = true;
        size_t n = nu - 1;
        Series i1 = series_inv(y1.resized(n)), i2 = series_inv(y2.resized(n));
        Series dx1 = x1.derivative(), dx2 = x2.derivative();
        auto lin = [&](const Fe& a, const Fe& b) {
          Series t = ch.u.scale(a);
          t[0] = K.add(t[0], b);
          return (t * ch.D).resized(n);
        };
        Series r1 = lin(m.at(0, 0), m.at(0, 1)) - (x1.resized(n) * dx1 * i1 + x2.resized(n) * dx2 * i2);
        Series r2 = lin(m.at(1, 0), m.at(1, 1)) - (dx1 * i1 + dx2 * i2);
        rpt.second_chart = r1.is_zero() && r2.is_zero();
        if (!rpt.second_chart) rpt.detail += "differential system fails at a second point; ";
      }
      if (!matched) {
        rpt.detail += "no consistent y branch at a second point; ";
        break;
      }
    }
    if (!rpt.second_chart && rpt.detail.find("second point") == std::string::npos) {
      rpt.detail += "no usable second point; ";
    }
  }

  // (d) images of random points lie on C'.
  {
    int checked = 0, bad = 0;
    for (int attempt = 0; attempt < 40 * npoints && checked < npoints; ++attempt) {
      Fe u = K.random(rng);
      auto v = K.sqrt(E.eval(u));
      if (!v || K.is_zero(*v)) continue;
      auto vals = eval_rep(rep, u, *v);
      if (!vals) continue;
      const auto& [s, p, q, r] = *vals;
      Fe disc = K.sub(K.sqr(s), K.mul(K.from_int(4), p));
      if (K.is_zero(disc)) continue;
      auto rt = root_of(L, disc);
      if (!rt) continue;
      const FieldPtr& M = rt->first;
      El sd(M, rt->second), sE(M, s), pE(M, p), qE(M, q), rE(M, r);
      El x1 = (sE - sd) / El::of(M, 2), x2 = (sE + sd) / El::of(M, 2);
      El delta = x2 - x1;
      if ((rE * delta).is_zero()) continue;
      El e1(M, Ep.eval(x1.v(), M.get())), e2(M, Ep.eval(x2.v(), M.get()));
      El y1 = (qE - e1) / (rE * delta);
      El y2 = y1 + rE * delta;
      ++checked;
      if (y1.sqr() != e1 || y2.sqr() != e2 || y1 * y2 != qE) ++bad;
    }
    rpt.points_checked = checked;
    rpt.points = checked > 0 && bad == 0;
    if (!rpt.points) rpt.detail += std::to_string(bad) + " of " + std::to_string(checked) + " point images off C'; ";
  }
  return rpt;
}

}  // namespace isogeny2
