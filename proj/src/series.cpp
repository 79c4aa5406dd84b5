#include "isogeny2/series.hpp"

#include <algorithm>

namespace isogeny2 {

namespace {

const FieldPtr& pick(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  return common_field(a.get(), b.get()) == a.get() ? a : b;
}

constexpr size_t kKaratsubaCutoff = 48;

// Prime-field fast path: accumulate in 128 bits, reduce every few terms.
void naive_into(const Field& F, const Fe* a, size_t na, const Fe* b, size_t nb, Fe* out,
                size_t n) {
  if (F.degree() == 1) {
    const uint64_t p = F.p();
    for (size_t k = 0; k < n; ++k) {
      size_t lo = k + 1 > nb ? k + 1 - nb : 0;
      size_t hi = std::min(k, na - 1);
      unsigned __int128 acc = 0;
      int cnt = 0;
      for (size_t i = lo; i <= hi && i < na; ++i) {
        acc += static_cast<unsigned __int128>(a[i].c[0]) * b[k - i].c[0];
        if (++cnt == 8) {
          acc %= p;
          cnt = 0;
        }
      }
      out[k] = Fe{};
      out[k].c[0] = static_cast<uint64_t>(acc % p);
    }
    return;
  }
  for (size_t k = 0; k < n; ++k) out[k] = Fe{};
  for (size_t i = 0; i < na && i < n; ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < nb && i + j < n; ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
  }
}

// Full product of two length-m arrays into out[0 .. 2m-1).
void karatsuba_full(const Field& F, const Fe* a, const Fe* b, size_t m, Fe* out) {
  if (m <= kKaratsubaCutoff) {
    naive_into(F, a, m, b, m, out, 2 * m - 1);
    return;
  }
  size_t h = m / 2, t = m - h;
  // a = a0 + z^h a1 with |a0| = h, |a1| = t >= h.
  std::vector<Fe> sa(t), sb(t);
  for (size_t i = 0; i < t; ++i) {
    sa[i] = i < h ? F.add(a[i], a[h + i]) : a[h + i];
    sb[i] = i < h ? F.add(b[i], b[h + i]) : b[h + i];
  }
  std::vector<Fe> lo(2 * h - 1), hi(2 * t - 1), mid(2 * t - 1);
  karatsuba_full(F, a, b, h, lo.data());
  karatsuba_full(F, a + h, b + h, t, hi.data());
  karatsuba_full(F, sa.data(), sb.data(), t, mid.data());
  for (size_t i = 0; i < 2 * m - 1; ++i) out[i] = Fe{};
  for (size_t i = 0; i < lo.size(); ++i) {
    out[i] = F.add(out[i], lo[i]);
    mid[i] = F.sub(mid[i], lo[i]);
  }
  for (size_t i = 0; i < hi.size(); ++i) {
    out[2 * h + i] = F.add(out[2 * h + i], hi[i]);
    mid[i] = F.sub(mid[i], hi[i]);
  }
  for (size_t i = 0; i < mid.size(); ++i) out[h + i] = F.add(out[h + i], mid[i]);
}

std::vector<Fe> mul_auto(const Field& F, const std::vector<Fe>& a, const std::vector<Fe>& b,
                         size_t n) {
  if (std::min({a.size(), b.size(), n}) > 2 * kKaratsubaCutoff) {
    return mul_karatsuba(F, a, b, n);
  }
  return mul_naive(F, a, b, n);
}

}  // namespace

std::vector<Fe> mul_naive(const Field& F, const std::vector<Fe>& a, const std::vector<Fe>& b,
                          size_t n) {
  std::vector<Fe> out(n);
  if (a.empty() || b.empty()) return out;
  naive_into(F, a.data(), a.size(), b.data(), b.size(), out.data(), n);
  return out;
}

std::vector<Fe> mul_karatsuba(const Field& F, const std::vector<Fe>& a,
                              const std::vector<Fe>& b, size_t n) {
  std::vector<Fe> out(n);
  if (a.empty() || b.empty() || n == 0) return out;
  size_t m = std::min(std::max(a.size(), b.size()), n);
  std::vector<Fe> pa(m), pb(m);
  std::copy_n(a.begin(), std::min(a.size(), m), pa.begin());
  std::copy_n(b.begin(), std::min(b.size(), m), pb.begin());
  std::vector<Fe> full(2 * m - 1);
  karatsuba_full(F, pa.data(), pb.data(), m, full.data());
  std::copy_n(full.begin(), std::min(n, full.size()), out.begin());
  return out;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(FieldPtr F, std::vector<Fe> c) : F_(std::move(F)), c_(std::move(c)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back();
}

Poly Poly::constant(const FieldPtr& F, const Fe& c) { return Poly(F, {c}); }

Poly Poly::monomial(const FieldPtr& F, const Fe& c, int deg) {
  std::vector<Fe> v(deg + 1);
  v[deg] = c;
  return Poly(F, v);
}

Poly Poly::from_ints(const FieldPtr& F, const std::vector<int64_t>& c) {
  std::vector<Fe> v;
  for (auto x : c) v.push_back(F->from_int(x));
  return Poly(F, v);
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!F_->is_zero(c_[i])) return static_cast<int>(i);
  return -1;
}

Poly Poly::operator+(const Poly& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = F->add(coeff(i), o.coeff(i));
  return Poly(F, r);
}

Poly Poly::operator-(const Poly& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = F->sub(coeff(i), o.coeff(i));
  return Poly(F, r);
}

Poly Poly::operator-() const {
  std::vector<Fe> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(c_[i]);
  return Poly(F_, r);
}

Poly Poly::operator*(const Poly& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  if (is_zero() || o.is_zero()) return Poly(F);
  return Poly(F, mul_auto(*F, c_, o.c_, c_.size() + o.c_.size() - 1));
}

Poly Poly::scale(const Fe& s) const {
  std::vector<Fe> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_->mul(c_[i], s);
  return Poly(F_, r);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  const FieldPtr& F = pick(F_, d.F_);
  std::vector<Fe> r = c_;
  int dd = d.degree();
  if (degree() < dd) return {Poly(F), Poly(F, r)};
  std::vector<Fe> q(degree() - dd + 1);
  Fe li = F->inv(d.lead());
  for (int k = degree() - dd; k >= 0; --k) {
    Fe coef = F->mul(r[k + dd], li);
    q[k] = coef;
    if (F->is_zero(coef)) continue;
    for (int j = 0; j <= dd; ++j) r[k + j] = F->sub(r[k + j], F->mul(coef, d.c_[j]));
  }
  r.resize(dd);
  return {Poly(F, q), Poly(F, r)};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(F_->inv(lead()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(F_);
  std::vector<Fe> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = F_->mul(F_->from_u64(i), c_[i]);
  return Poly(F_, r);
}

Fe Poly::eval(const Fe& x, const Field* L) const {
  if (is_zero()) return Fe{};
  const Field& F = L ? *common_field(L, F_.get()) : *F_;
  Fe r{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

Poly Poly::compose(const Poly& g) const {
  const FieldPtr& F = pick(F_, g.F_);
  Poly r(F);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + Poly::constant(F, *it);
  return r;
}

Series Poly::eval(const Series& s) const {
  const FieldPtr& F = pick(F_, s.field());
  Series r(F, s.prec());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * s;
    r[0] = F->add(r[0], *it);
  }
  return r;
}

Poly Poly::lift(const FieldPtr& L) const {
  common_field(L.get(), F_ ? F_.get() : L.get());
  return Poly(L, c_);
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

Poly powmod(const Poly& base, const BigInt& e, const Poly& m) {
  const FieldPtr& F = pick(base.field(), m.field());
  Poly r = Poly::constant(F, F->one()).divmod(m).second;
  Poly b = base.divmod(m).second;
  unsigned bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
  for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
    r = (r * r).divmod(m).second;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = (r * b).divmod(m).second;
  }
  return r;
}

namespace {

void split_roots(const Poly& g, std::mt19937_64& rng, std::vector<Fe>& out) {
  const FieldPtr& F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F->neg(F->div(g.coeff(0), g.coeff(1))));
    return;
  }
  const BigInt e = (F->order() - 1) / 2;
  for (;;) {
    Poly t(F, {F->random(rng), F->one()});
    Poly h = powmod(t, e, g) - Poly::constant(F, F->one());
    Poly d = gcd(h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, rng, out);
      split_roots(g.divmod(d).first, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fe> poly_roots(const Poly& f, std::mt19937_64& rng) {
  if (f.degree() <= 0) return {};
  const FieldPtr& F = f.field();
  Poly m = f.monic();
  Poly xq = powmod(Poly::x(F), F->order(), m);
  Poly g = gcd(xq - Poly::x(F), m);
  std::vector<Fe> out;
  split_roots(g, rng, out);
  std::sort(out.begin(), out.end(),
            [&](const Fe& a, const Fe& b) { return F->compare(a, b) < 0; });
  return out;
}

void xgcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v) {
  const FieldPtr& F = pick(a.field(), b.field());
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F, F->one()), s1(F);
  Poly t0(F), t1 = Poly::constant(F, F->one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) {
    g = r0;
    u = Poly(F);
    v = Poly(F);
    return;
  }
  Fe li = F->inv(r0.lead());
  g = r0.scale(li);
  u = s0.scale(li);
  v = t0.scale(li);
}

// ---------------------------------------------------------------- Series

Series Series::from_poly(const Poly& p, size_t prec) {
  Series s(p.field(), prec);
  for (size_t i = 0; i < prec && static_cast<int>(i) <= p.degree(); ++i) s[i] = p.coeff(i);
  return s;
}

Series Series::constant(const FieldPtr& F, const Fe& c, size_t prec) {
  Series s(F, prec);
  if (prec) s[0] = c;
  return s;
}

size_t Series::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!F_->is_zero(c_[i])) return i;
  return c_.size();
}

Series Series::operator+(const Series& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  size_t n = std::min(prec(), o.prec());
  Series r(F, n);
  for (size_t i = 0; i < n; ++i) r[i] = F->add(c_[i], o.c_[i]);
  return r;
}

Series Series::operator-(const Series& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  size_t n = std::min(prec(), o.prec());
  Series r(F, n);
  for (size_t i = 0; i < n; ++i) r[i] = F->sub(c_[i], o.c_[i]);
  return r;
}

Series Series::operator-() const {
  Series r(F_, prec());
  for (size_t i = 0; i < prec(); ++i) r[i] = F_->neg(c_[i]);
  return r;
}

Series Series::operator*(const Series& o) const {
  const FieldPtr& F = pick(F_, o.F_);
  size_t n = std::min(prec(), o.prec());
  return Series(F, mul_auto(*F, c_, o.c_, n));
}

Series Series::scale(const Fe& s) const {
  Series r(F_, prec());
  for (size_t i = 0; i < prec(); ++i) r[i] = F_->mul(c_[i], s);
  return r;
}

Series Series::resized(size_t n) const {
  Series r(F_, n);
  std::copy_n(c_.begin(), std::min(n, prec()), r.c_.begin());
  return r;
}

Series Series::slice(size_t from, size_t to) const {
  if (to > prec() || from > to) throw Error(Errc::PrecisionTooLow, "slice beyond precision");
  return Series(F_, std::vector<Fe>(c_.begin() + from, c_.begin() + to));
}

Series Series::mul_z(size_t k) const {
  Series r(F_, prec() + k);
  std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
  return r;
}

Series Series::div_z(size_t k) const {
  if (valuation() < k && k <= prec()) {
    throw Error(Errc::InvalidArgument, "division by z^k of a series of smaller valuation");
  }
  if (k > prec()) throw Error(Errc::PrecisionTooLow, "division by z^k beyond precision");
  return slice(k, prec());
}

Series Series::derivative() const {
  if (prec() == 0) return *this;
  Series r(F_, prec() - 1);
  for (size_t i = 1; i < prec(); ++i) r[i - 1] = F_->mul(F_->from_u64(i), c_[i]);
  return r;
}

Series Series::even_part() const {
  Series r(F_, (prec() + 1) / 2);
  for (size_t i = 0; i < r.prec(); ++i) r[i] = c_[2 * i];
  return r;
}

Series Series::odd_part() const {
  Series r(F_, prec() / 2);
  for (size_t i = 0; i < r.prec(); ++i) r[i] = c_[2 * i + 1];
  return r;
}

Series Series::lift(const FieldPtr& L) const {
  common_field(L.get(), F_.get());
  return Series(L, c_);
}

Poly Series::to_poly() const { return Poly(F_, c_); }

namespace {

Series inv_naive(const Series& f, size_t n) {
  const Field& F = *f.field();
  Series r(f.field(), n);
  Fe c = F.inv(f[0]);
  r[0] = c;
  for (size_t k = 1; k < n; ++k) {
    Fe acc{};
    for (size_t i = 1; i <= k && i < f.prec(); ++i) acc = F.add(acc, F.mul(f[i], r[k - i]));
    r[k] = F.neg(F.mul(acc, c));
  }
  return r;
}

Series sqrt_naive(const Series& f, const Fe& branch, size_t n) {
  const Field& F = *f.field();
  Series r(f.field(), n);
  r[0] = branch;
  Fe i2 = F.inv(F.add(branch, branch));
  for (size_t k = 1; k < n; ++k) {
    Fe acc = k < f.prec() ? f[k] : Fe{};
    for (size_t i = 1; i < k; ++i) acc = F.sub(acc, F.mul(r[i], r[k - i]));
    r[k] = F.mul(acc, i2);
  }
  return r;
}

}  // namespace

Series series_inv(const Series& f) {
  if (f.prec() == 0) return f;
  if (f.field()->is_zero(f[0])) throw Error(Errc::ZeroConstantTerm, "series_inv");
  size_t n = f.prec();
  if (n <= 128) return inv_naive(f, n);
  // Newton: g <- g (2 - f g), doubling precision.
  size_t m = 64;
  Series g = inv_naive(f.resized(m), m);
  const Fe two = f.field()->from_int(2);
  while (m < n) {
    m = std::min(2 * m, n);
    Series gm = g.resized(m);
    Series e = f.resized(m) * gm;
    e = -e;
    e[0] = f.field()->add(e[0], two);
    g = gm * e;
  }
  return g;
}

Series series_sqrt(const Series& f, const Fe& branch) {
  if (f.prec() == 0) return f;
  const Field& F = *f.field();
  if (F.is_zero(f[0])) throw Error(Errc::ZeroConstantTerm, "series_sqrt of a non-unit");
  if (F.compare(F.sqr(branch), f[0]) != 0) {
    throw Error(Errc::NonSquareLeadingTerm, "branch does not square to the leading term");
  }
  size_t n = f.prec();
  if (n <= 128) return sqrt_naive(f, branch, n);
  size_t m = 64;
  Series s = sqrt_naive(f.resized(m), branch, m);
  const Fe half = F.inv(F.from_int(2));
  while (m < n) {
    m = std::min(2 * m, n);
    Series sm = s.resized(m);
    s = (sm + f.resized(m) * series_inv(sm)).scale(half);
  }
  return s;
}

Series series_sqrt_ramified(const Series& f, const Fe& branch) {
  size_t v = f.valuation();
  if (v == f.prec()) throw Error(Errc::PrecisionTooLow, "series is zero to its precision");
  if (v % 2) throw Error(Errc::OddValuation, "series_sqrt of odd valuation");
  Series g = f.div_z(v);
  Series r = series_sqrt(g, branch).mul_z(v / 2);
  return r.resized(f.prec() - v / 2);
}

// ---------------------------------------------------------------- fractions

RationalFraction::RationalFraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(Errc::InvalidArgument, "zero denominator");
  const FieldPtr& F = pick(num.field(), den.field());
  Poly g = gcd(num, den);
  if (num.is_zero()) {
    num_ = Poly(F);
    den_ = Poly::constant(F, F->one());
    return;
  }
  Poly n = num.divmod(g).first, d = den.divmod(g).first;
  Fe li = F->inv(d.lead());
  num_ = n.scale(li);
  den_ = d.scale(li);
}

RationalFraction RationalFraction::from_poly(const Poly& p) {
  return RationalFraction(p, Poly::constant(p.field(), p.field()->one()));
}

RationalFraction RationalFraction::operator+(const RationalFraction& o) const {
  return RationalFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFraction RationalFraction::operator-(const RationalFraction& o) const {
  return RationalFraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFraction RationalFraction::operator-() const {
  RationalFraction r = *this;
  r.num_ = -num_;
  return r;
}
RationalFraction RationalFraction::operator*(const RationalFraction& o) const {
  return RationalFraction(num_ * o.num_, den_ * o.den_);
}
RationalFraction RationalFraction::operator/(const RationalFraction& o) const {
  if (o.is_zero()) throw Error(Errc::InvalidArgument, "division by zero fraction");
  return RationalFraction(num_ * o.den_, den_ * o.num_);
}
RationalFraction RationalFraction::scale(const Fe& s) const {
  return RationalFraction(num_.scale(s), den_);
}

std::optional<Fe> RationalFraction::eval(const Fe& x, const Field* L) const {
  const Field& F = L ? *common_field(L, field().get()) : *field();
  Fe d = den_.eval(x, &F);
  if (F.is_zero(d)) return std::nullopt;
  return F.mul(num_.eval(x, &F), F.inv(d));
}

Series RationalFraction::eval(const Series& u) const {
  return num_.eval(u) * series_inv(den_.eval(u));
}

RationalFraction pade(const Series& f, int dn, int dd) {
  if (dn < 0 || dd < 0) throw Error(Errc::InvalidArgument, "negative degree bound");
  const size_t N = static_cast<size_t>(dn + dd + 1);
  if (f.prec() < N) throw Error(Errc::PrecisionTooLow, "pade needs dn + dd + 1 terms");
  const FieldPtr& F = f.field();
  Poly r0 = Poly::monomial(F, F->one(), static_cast<int>(N));
  Poly r1 = f.resized(N).to_poly();
  Poly t0(F), t1 = Poly::constant(F, F->one());
  while (r1.degree() > dn) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Poly t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1.degree() > dd || F->is_zero(t1.coeff(0))) {
    throw Error(Errc::NoSolution, "no fraction within the degree bounds");
  }
  RationalFraction R(r1, t1);
  if (R.num().degree() > dn || R.den().degree() > dd) {
    throw Error(Errc::NoSolution, "no fraction within the degree bounds");
  }
  return R;
}

std::optional<Poly> poly_sqrt(const Poly& P) {
  if (P.is_zero()) return P;
  const FieldPtr& F = P.field();
  int v = P.valuation();
  int d = P.degree();
  if (v % 2 || (d - v) % 2) return std::nullopt;
  auto c = F->sqrt(P.coeff(v));
  if (!c) return std::nullopt;
  std::vector<Fe> g(P.coeffs().begin() + v, P.coeffs().end());
  size_t n = static_cast<size_t>((d - v) / 2 + 1);
  Series s = series_sqrt(Series(F, g).resized(n), *c);
  Poly G = Poly(F, s.coeffs()) * Poly::monomial(F, F->one(), v / 2);
  if (G * G != P) return std::nullopt;
  if (F->compare(F->canonical_sign(G.lead()), G.lead()) != 0) G = -G;
  return G;
}

}  // namespace isogeny2
