#include "isogeny2/covariants.hpp"

namespace isogeny2 {

namespace {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// d^(s+t) / dx^s dy^t of sum a[i] x^i y^(m-i).
std::vector<Fe> partial(const Field& F, const std::vector<Fe>& a, int s, int t) {
  int m = static_cast<int>(a.size()) - 1;
  std::vector<Fe> r(m - s - t + 1);
  for (int i = s; i <= m - t; ++i) {
    uint64_t c = 1;
    for (int j = 0; j < s; ++j) c = F.mulmod(c, static_cast<uint64_t>(i - j) % F.p());
    for (int j = 0; j < t; ++j) c = F.mulmod(c, static_cast<uint64_t>(m - i - j) % F.p());
    r[i - s] = F.mul(a[i], F.from_u64(c));
  }
  return r;
}

}  // namespace

BinaryForm make_form(const FieldPtr& F, const std::vector<int64_t>& a) {
  BinaryForm f{F, {}};
  for (auto v : a) f.a.push_back(F->from_int(v));
  return f;
}

BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int k) {
  const int m = f.order(), n = g.order();
  if (k < 0 || k > m || k > n) throw Error(Errc::OrderTooLarge, "transvectant order");
  const FieldPtr& Fp = common_field(f.F.get(), g.F.get()) == f.F.get() ? f.F : g.F;
  const Field& F = *Fp;
  std::vector<Fe> out(m + n - 2 * k + 1);
  for (int i = 0; i <= k; ++i) {
    auto df = partial(F, f.a, k - i, i);
    auto dg = partial(F, g.a, i, k - i);
    Fe c = F.from_bigint(binom(k, i));
    if (i % 2) c = F.neg(c);
    for (size_t u = 0; u < df.size(); ++u) {
      if (F.is_zero(df[u])) continue;
      Fe cu = F.mul(c, df[u]);
      for (size_t v = 0; v < dg.size(); ++v) out[u + v] = F.add(out[u + v], F.mul(cu, dg[v]));
    }
  }
  Fe norm = F.rat(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n));
  for (auto& c : out) c = F.mul(c, norm);
  return BinaryForm{Fp, out};
}

BinaryForm gl2_act(const Mat& r, int k, const BinaryForm& f) {
  const Field& F = *f.F;
  const int n = f.order();
  Mat S = sym_power(r, n);
  Fe d = r.det();
  Fe dk = k >= 0 ? F.pow(d, static_cast<uint64_t>(k)) : F.pow(F.inv(d), static_cast<uint64_t>(-k));
  // The matrix acts on coefficients listed in the basis (x^n, ..., 1).
  BinaryForm out{f.F, std::vector<Fe>(n + 1)};
  for (int i = 0; i <= n; ++i) {
    Fe s{};
    for (int j = 0; j <= n; ++j) s = F.add(s, F.mul(S.at(n - i, n - j), f.a[j]));
    out.a[i] = F.mul(s, dk);
  }
  return out;
}

Covariants generator_covariants(const BinaryForm& f) {
  if (f.order() != 6) throw Error(Errc::InvalidArgument, "expected a sextic");
  const FieldPtr& Fp = f.F;
  const Field& F = *Fp;
  if (F.p() <= 5) throw Error(Errc::InvalidArgument, "characteristic must exceed 5");
  BinaryForm i = transvectant(f, f, 4);
  BinaryForm delta = transvectant(i, i, 2);
  BinaryForm y1 = transvectant(f, i, 4);
  BinaryForm y2 = transvectant(i, y1, 2);
  BinaryForm y3 = transvectant(i, y2, 2);
  Fe A = transvectant(f, f, 6).a[0];
  Fe B = transvectant(i, i, 4).a[0];
  Fe C = transvectant(i, delta, 4).a[0];
  Fe D = transvectant(y3, y1, 2).a[0];
  Fe R = transvectant(transvectant(y1, y2, 1), y3, 2).a[0];

  auto c = [&](int64_t v) { return El::of(Fp, v); };
  El a(Fp, A), b(Fp, B), cc(Fp, C), d(Fp, D);
  El I2 = c(-120) * a;
  El I4 = c(-720) * a.sqr() + c(6750) * b;
  El I6 = c(8640) * a.pow(3) - c(108000) * a * b + c(202500) * cc;
  El I10 = c(-62208) * a.pow(5) + c(972000) * a.pow(3) * b + c(1620000) * a.sqr() * cc -
           c(3037500) * a * b.sqr() - c(6075000) * b * cc - c(4556250) * d;
  El I6p = (I2 * I4 - c(3) * I6) / c(2);

  Covariants out;
  out.I2 = I2.v();
  out.I4 = I4.v();
  out.I6 = I6.v();
  out.I6p = I6p.v();
  out.I10 = I10.v();
  out.y1 = y1;
  out.y2 = y2;
  out.y3 = y3;
  out.R = F.mul(R, F.rat(1, 8));
  out.A = A;
  out.B = B;
  out.C = C;
  out.D = D;
  return out;
}

IgusaClebsch igusa_clebsch(const BinaryForm& f) {
  Covariants c = generator_covariants(f);
  return {c.I2, c.I4, c.I6, c.I10};
}

std::array<Fe, 3> igusa_from_ic(const FieldPtr& Fp, const IgusaClebsch& ic) {
  const Field& F = *Fp;
  if (F.is_zero(ic.I10)) throw Error(Errc::SingularCurve, "I10 vanishes");
  El I2(Fp, ic.I2), I4(Fp, ic.I4), I6(Fp, ic.I6), I10(Fp, ic.I10);
  El I6p = (I2 * I4 - El::of(Fp, 3) * I6) / El::of(Fp, 2);
  return {(I4 * I6p / I10).v(), (I2 * I4.sqr() / I10).v(), (I4.pow(5) / I10.sqr()).v()};
}

std::array<Fe, 3> igusa_invariants(const BinaryForm& f) {
  return igusa_from_ic(f.F, igusa_clebsch(f));
}

std::array<Fe, 3> quad_basis(const BinaryForm& q) {
  if (q.order() != 2) throw Error(Errc::InvalidArgument, "expected a quadratic form");
  return {q.a[2], q.a[1], q.a[0]};
}

Mat dtau_j_matrix(const BinaryForm& f) {
  const FieldPtr& Fp = f.F;
  Covariants cv = generator_covariants(f);
  if (Fp->is_zero(cv.I10)) throw Error(Errc::SingularCurve, "I10 vanishes");
  if (Fp->is_zero(cv.I4)) throw Error(Errc::ZeroI4, "I4 vanishes");
  El I2(Fp, cv.I2), I4(Fp, cv.I4), I6(Fp, cv.I6), I10(Fp, cv.I10);
  auto q = [&](int64_t n, int64_t d) { return El::rat(Fp, n, d); };
  El I4_4 = I4.pow(4);
  std::array<std::array<El, 3>, 3> s = {{
      {(q(153, 8) * I2.sqr() * I4 - q(135, 2) * I2 * I6 + q(135, 2) * I4.sqr()) / I10,
       (q(46575, 4) * I2 * I4 - q(30375, 1) * I6) / I10, q(1366875, 1) * I4 / I10},
      {(q(90, 1) * I2.sqr() * I4 + q(900, 1) * I4.sqr()) / I10, q(40500, 1) * I2 * I4 / I10,
       q(0, 1)},
      {q(225, 1) * I2 * I4_4 / I10.sqr(), q(101250, 1) * I4_4 / I10.sqr(), q(0, 1)},
  }};
  std::array<std::array<Fe, 3>, 3> y = {quad_basis(cv.y1), quad_basis(cv.y2),
                                        quad_basis(cv.y3)};
  const int colscale[3] = {2, 1, 2};
  Mat M(Fp, 3, 3);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      El acc = q(0, 1);
      for (int i = 0; i < 3; ++i) acc += s[k][i] * El(Fp, y[i][j]);
      M.at(k, j) = (colscale[j] * acc).v();
    }
  return M;
}

}  // namespace isogeny2
