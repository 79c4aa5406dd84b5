#include "isogeny2/rm_q5.hpp"

#include "isogeny2/dual.hpp"

namespace isogeny2 {

namespace {

std::array<Dual, 3> h_of(const FieldPtr& F, const Dual& g1, const Dual& g2) {
  if (g1.a.is_zero()) throw Error(Errc::ZeroG1, "g1 = 0");
  auto k = [&](int64_t n, int64_t d = 1) { return El::rat(F, n, d); };
  Dual A = k(3) * (g2 * g2 / g1) - Dual::constant(k(2));
  Dual h1 = k(8) * (g1 * A.pow(5));
  Dual h2 = k(1, 2) * (g1 * A.pow(3));
  Dual h3 = k(1, 8) * (g1 * A.pow(2) *
                       (k(4) * (g2 * g2 / g1) + k(288) * (g2 / g1) - Dual::constant(k(3))));
  return {h1, h2, h3};
}

std::array<Dual, 3> j_of(const FieldPtr& F, const Dual& g1, const Dual& g2) {
  auto [h1, h2, h3] = h_of(F, g1, g2);
  if (h1.a.is_zero() || h2.a.is_zero()) {
    throw Error(Errc::DegenerateGundlach, "3 g2^2 = 2 g1: pullback has I2 = 0");
  }
  auto k = [&](int64_t n) { return El::of(F, n); };
  // (I2, I4, I6, I10) = (1, h2/h1, h3/h1, 1/h1).
  Dual j1 = h2 * (h2 - k(3) * h3) / (k(2) * h1);
  Dual j2 = h2 * h2 / h1;
  Dual j3 = h2.pow(5) / h1.pow(3);
  return {j1, j2, j3};
}

}  // namespace

std::array<Fe, 3> gundlach_to_h(const FieldPtr& F, const GundlachPoint& g) {
  auto h = h_of(F, Dual::constant(El(F, g.g1)), Dual::constant(El(F, g.g2)));
  return {h[0].a.v(), h[1].a.v(), h[2].a.v()};
}

std::array<Fe, 3> gundlach_to_igusa(const FieldPtr& F, const GundlachPoint& g) {
  auto j = j_of(F, Dual::constant(El(F, g.g1)), Dual::constant(El(F, g.g2)));
  return {j[0].a.v(), j[1].a.v(), j[2].a.v()};
}

Mat gundlach_jacobian(const FieldPtr& F, const GundlachPoint& g) {
  El g1(F, g.g1), g2(F, g.g2);
  auto d1 = j_of(F, Dual::variable(g1), Dual::constant(g2));
  auto d2 = j_of(F, Dual::constant(g1), Dual::variable(g2));
  Mat J(F, 3, 2);
  for (int i = 0; i < 3; ++i) {
    J.at(i, 0) = d1[i].b.v();
    J.at(i, 1) = d2[i].b.v();
  }
  return J;
}

GundlachPoint igusa_to_gundlach(const FieldPtr& F, const std::array<Fe, 3>& jv) {
  El j1(F, jv[0]), j2(F, jv[1]), j3(F, jv[2]);
  if (j2.is_zero() || j3.is_zero()) {
    throw Error(Errc::NotOnHumbert, "j2 = 0 or j3 = 0 is outside the generic image");
  }
  auto k = [&](int64_t n, int64_t d = 1) { return El::rat(F, n, d); };
  El h1 = j2.pow(5) / j3.sqr();
  El h2 = j2.pow(3) / j3;
  El h3 = (h2 - k(2) * j1 * j2.sqr() / j3) / k(3);
  El A2 = h1 / (k(16) * h2);
  auto A0 = A2.sqrt();
  if (!A0) throw Error(Errc::NonSquare, "A^2 has no root in the field");
  if (A0->is_zero()) throw Error(Errc::DegenerateGundlach, "A = 0");
  for (const El& A : {*A0, -*A0}) {
    El g1 = k(2) * h2 / A.pow(3);
    // h3 = A^2/8 (4 g1 (A + 2)/3 + 288 g2 - 3 g1) once g2^2 = g1 (A + 2)/3.
    El g2 = (k(8) * h3 / A.sqr() - k(4, 3) * g1 * (A + k(2)) + k(3) * g1) / k(288);
    if (g2.sqr() != g1 * (A + k(2)) / k(3)) continue;
    GundlachPoint g{g1.v(), g2.v()};
    if (gundlach_to_igusa(F, g) != jv) continue;
    return g;
  }
  throw Error(Errc::NotOnHumbert, "no Gundlach preimage");
}

Fe sqrt5(const FieldPtr& F) {
  auto r = F->sqrt(F->from_int(5));
  if (!r) throw Error(Errc::NonSquare, "5 is not a square in the field");
  return *r;
}

std::pair<Fe, Fe> beta_pair(const FieldPtr& F, int64_t norm, int64_t trace, const Fe& s5) {
  int64_t d = trace * trace - 4 * norm;
  if (d <= 0 || d % 5) throw Error(Errc::InvalidArgument, "not a totally positive element of Z[(1+sqrt5)/2]");
  int64_t b2 = d / 5, b = 0;
  while (b * b < b2) ++b;
  if (b * b != b2) throw Error(Errc::InvalidArgument, "trace and norm do not define an element of Q(sqrt5)");
  El t = El::of(F, trace), bs = El::of(F, b) * El(F, s5), half = El::rat(F, 1, 2);
  return {((t + bs) * half).v(), ((t - bs) * half).v()};
}

DtGResult dtG_matrix_unchecked(const CurveModel& C, const Fe& s5,
                               const std::optional<GundlachPoint>& gin) {
  const FieldPtr& F = C.field();
  GundlachPoint g = gin ? *gin : igusa_to_gundlach(F, igusa_invariants(C.sextic()));
  Mat J = gundlach_jacobian(F, g);
  Mat DT = dtau_j_matrix(C.sextic()).select_cols({0, 2});
  Mat J13 = J.select_rows({0, 2});
  if (!J13.invertible()) throw Error(Errc::SingularJacobian, "d(j1, j3)/d(g1, g2) is singular");
  Mat X = J13.inverse() * DT.select_rows({0, 2});
  Mat resid = J.select_rows({1}) * X - DT.select_rows({1});
  El r5(F, s5), five = El::of(F, 5);
  Mat S = Mat::diag(F, {(five + r5).inv().v(), (five - r5).inv().v()});
  return {X * S, resid, g};
}

Mat dtG_matrix(const CurveModel& C, const Fe& s5, const std::optional<GundlachPoint>& g) {
  DtGResult r = dtG_matrix_unchecked(C, s5, g);
  const Field& F = *C.field();
  for (int j = 0; j < 2; ++j) {
    if (!F.is_zero(r.residual.at(0, j))) {
      throw Error(Errc::InconsistentChainRule, "chain rule fails on the j2 row");
    }
  }
  return r.dtg;
}

namespace {

struct PullbackData {
  El b3sq, b1b5, b0b6, quartic;  // right-hand sides
};

PullbackData pullback_rhs(const FieldPtr& F, const GundlachPoint& g) {
  auto k = [&](int64_t n, int64_t d = 1) { return El::rat(F, n, d); };
  El g1(F, g.g1), g2(F, g.g2);
  if (g1.is_zero()) throw Error(Errc::ZeroG1, "g1 = 0");
  El G2 = k(1), F10 = g1.inv(), F6 = g2 / g1;
  if (F6.is_zero()) throw Error(Errc::DegenerateGundlach, "F6 vanishes");
  PullbackData d;
  d.b3sq = k(4) * F10 * F6.sqr();
  d.b1b5 = k(36, 25) * F10 * F6.sqr() - k(4, 5) * F10.sqr() * G2;
  d.b0b6 = k(-4, 25) * F10 * F6.sqr() + k(1, 5) * F10.sqr() * G2;
  d.quartic = k(128) * F10.pow(6) * F6 - k(32, 25) * F10.pow(5) * F6.sqr() * G2.sqr() +
              k(288, 125) * F10.pow(4) * F6.pow(4) * G2 -
              k(3456, 3125) * F10.pow(3) * F6.pow(6);
  return d;
}

}  // namespace

std::array<Fe, 4> pullback_residuals(const CurveModel& C, const GundlachPoint& g) {
  const FieldPtr& L = C.field();
  PullbackData d = pullback_rhs(L, g);
  auto b = [&](int i) { return El(L, C.sextic().a[i]); };
  El lhs4 = b(3) * (b(0).sqr() * b(5).pow(3) + b(1).pow(3) * b(6).sqr());
  return {(b(3).sqr() - d.b3sq).v(), (b(1) * b(5) - d.b1b5).v(), (b(0) * b(6) - d.b0b6).v(),
          (lhs4 - d.quartic).v()};
}

CurveModel hilb_curve_reconstruct(const FieldPtr& F, const GundlachPoint& g,
                                  std::mt19937_64& rng, int64_t b1v) {
  const auto jtarget = gundlach_to_igusa(F, g);
  FieldPtr K = F;
  PullbackData d = pullback_rhs(K, g);
  El b3;
  if (auto r = d.b3sq.sqrt()) {
    b3 = *r;
  } else {
    auto [K2, t] = adjoin_sqrt(K, d.b3sq.v());
    K = K2;
    b3 = El(K, t);
  }
  auto k = [&](int64_t n) { return El::of(K, n); };
  El b1 = k(b1v);
  if (b1.is_zero()) throw Error(Errc::InvalidArgument, "b1 must be nonzero");
  El b5 = d.b1b5 / b1;
  El P06 = d.b0b6;
  El T = d.quartic / b3;
  // b5^3 t^2 - T t + b1^3 P06^2 = 0 with t = b0^2.
  El qa = b5.pow(3), qc = b1.pow(3) * P06.sqr();
  if (qa.is_zero()) throw Error(Errc::DegenerateGundlach, "b5 vanishes");
  El disc = T.sqr() - k(4) * qa * qc;
  auto sd = disc.sqrt();
  if (!sd) {
    auto [K2, t] = adjoin_sqrt(K, disc.v());
    K = K2;
    sd = El(K, t);
  }
  (void)rng;
  std::vector<El> ts = {(T + *sd) / (k(2) * qa), (T - *sd) / (k(2) * qa)};
  auto attempt = [&](const El& b0) -> std::optional<CurveModel> {
    if (b0.is_zero()) return std::nullopt;
    El b6 = P06 / b0;
    const FieldPtr& L = K;
    // Elements of subfields share the flattened layout of K.
    BinaryForm f{L, {b0.v(), b1.v(), Fe{}, b3.v(), Fe{}, b5.v(), b6.v()}};
    if (L->is_zero(igusa_clebsch(f).I10)) return std::nullopt;
    auto j = igusa_invariants(f);
    for (int i = 0; i < 3; ++i)
      if (L->compare(j[i], jtarget[i]) != 0) return std::nullopt;
    return CurveModel(f);
  };
  for (const El& t : ts) {
    if (auto r = t.sqrt()) {
      if (auto c = attempt(*r)) return *c;
    }
  }
  if (K->degree() * 2 <= kMaxDegree) {
    for (const El& t : ts) {
      if (t.is_zero() || t.sqrt()) continue;
      auto [K2, s] = adjoin_sqrt(K, t.v());
      K = K2;
      b3 = El(K, b3.v());
      if (auto c = attempt(El(K, s))) return *c;
      break;
    }
  }
  throw Error(Errc::NotOnHumbert, "no Hilbert-normalized model reproduces the invariants");
}

}  // namespace isogeny2
