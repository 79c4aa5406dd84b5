#include "isogeny2/field.hpp"

#include <sstream>

namespace isogeny2 {

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
  unsigned __int128 r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint64_t>(r);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

FieldPtr Field::prime(uint64_t p) {
  if (p < 3 || p >= (uint64_t{1} << 62) || !is_prime_u64(p)) {
    throw Error(Errc::InvalidArgument, "modulus must be an odd prime below 2^62");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->deg_ = 1;
  f->q_ = p;
  f->setup_sqrt();
  return f;
}

FieldPtr Field::extend(const FieldPtr& base, const Fe& b, const Fe& c) {
  if (!base) throw Error(Errc::InvalidArgument, "null base field");
  if (base->deg_ * 2 > kMaxDegree) {
    throw Error(Errc::DegreeOverflow, "extension degree would exceed 8");
  }
  Fe disc = base->sub(base->sqr(b), base->mul(base->from_int(4), c));
  if (base->is_square(disc)) {
    throw Error(Errc::NotIrreducible, "t^2 + b t + c is reducible over the base");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->p_;
  f->deg_ = base->deg_ * 2;
  f->half_ = base->deg_;
  f->base_ = base;
  f->b_ = b;
  f->c_ = c;
  f->q_ = base->q_ * base->q_;
  f->setup_sqrt();
  return f;
}

bool Field::contains(const Field& other) const {
  const Field* f = this;
  while (f) {
    if (f == &other) return true;
    f = f->base_.get();
  }
  return false;
}

Fe Field::from_int(int64_t v) const {
  Fe r;
  int64_t m = v % static_cast<int64_t>(p_);
  if (m < 0) m += static_cast<int64_t>(p_);
  r.c[0] = static_cast<uint64_t>(m);
  return r;
}

Fe Field::from_u64(uint64_t v) const {
  Fe r;
  r.c[0] = v % p_;
  return r;
}

Fe Field::from_bigint(const BigInt& v) const {
  BigInt m = v % p_;
  if (m < 0) m += p_;
  Fe r;
  r.c[0] = static_cast<uint64_t>(m);
  return r;
}

Fe Field::rat(const BigInt& num, const BigInt& den) const {
  Fe d = from_bigint(den);
  if (is_zero(d)) throw Error(Errc::InvalidArgument, "denominator divisible by p");
  return mul(from_bigint(num), inv(d));
}

Fe Field::gen() const {
  if (!base_) throw Error(Errc::InvalidArgument, "prime field has no generator");
  Fe r;
  r.c[half_] = 1;
  return r;
}

Fe Field::add(const Fe& a, const Fe& b) const {
  Fe r;
  for (int i = 0; i < deg_; ++i) {
    uint64_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Fe Field::sub(const Fe& a, const Fe& b) const {
  Fe r;
  for (int i = 0; i < deg_; ++i) {
    r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  }
  return r;
}

Fe Field::neg(const Fe& a) const {
  Fe r;
  for (int i = 0; i < deg_; ++i) r.c[i] = a.c[i] ? p_ - a.c[i] : 0;
  return r;
}

void Field::mul_into(const uint64_t* x, const uint64_t* y, uint64_t* out) const {
  if (!base_) {
    out[0] = mulmod(x[0], y[0]);
    return;
  }
  const Field& B = *base_;
  const int h = half_;
  Fe a0, a1, b0, b1;
  for (int i = 0; i < h; ++i) {
    a0.c[i] = x[i];
    a1.c[i] = x[h + i];
    b0.c[i] = y[i];
    b1.c[i] = y[h + i];
  }
  // Karatsuba over the base, then reduce t^2 = -b t - c.
  Fe lo = B.mul(a0, b0);
  Fe hi = B.mul(a1, b1);
  Fe mid = B.sub(B.sub(B.mul(B.add(a0, a1), B.add(b0, b1)), lo), hi);
  Fe r0 = B.sub(lo, B.mul(hi, c_));
  Fe r1 = B.is_zero(b_) ? mid : B.sub(mid, B.mul(hi, b_));
  for (int i = 0; i < h; ++i) {
    out[i] = r0.c[i];
    out[h + i] = r1.c[i];
  }
}

Fe Field::mul(const Fe& a, const Fe& b) const {
  Fe r;
  mul_into(a.c.data(), b.c.data(), r.c.data());
  return r;
}

Fe Field::inv(const Fe& a) const {
  if (is_zero(a)) throw Error(Errc::InvalidArgument, "inverse of zero");
  if (!base_) return Fe{{powmod_u64(a.c[0], p_ - 2, p_)}};
  const Field& B = *base_;
  const int h = half_;
  Fe x0, x1;
  for (int i = 0; i < h; ++i) {
    x0.c[i] = a.c[i];
    x1.c[i] = a.c[h + i];
  }
  // conj(x0 + x1 t) = (x0 - b x1) - x1 t; norm = x0 (x0 - b x1) + c x1^2.
  Fe y0 = B.sub(x0, B.mul(b_, x1));
  Fe n = B.add(B.mul(x0, y0), B.mul(c_, B.sqr(x1)));
  Fe ni = B.inv(n);
  Fe r0 = B.mul(y0, ni);
  Fe r1 = B.neg(B.mul(x1, ni));
  Fe r;
  for (int i = 0; i < h; ++i) {
    r.c[i] = r0.c[i];
    r.c[h + i] = r1.c[i];
  }
  return r;
}

Fe Field::pow(const Fe& a, uint64_t e) const {
  Fe r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = sqr(b);
    e >>= 1;
  }
  return r;
}

Fe Field::pow(const Fe& a, const BigInt& e) const {
  if (e < 0) return pow(inv(a), BigInt(-e));
  Fe r = one();
  unsigned bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
  for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
    r = sqr(r);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mul(r, a);
  }
  return r;
}

bool Field::is_zero(const Fe& a) const {
  for (int i = 0; i < deg_; ++i)
    if (a.c[i]) return false;
  return true;
}

bool Field::in_prime_field(const Fe& a) const {
  for (int i = 1; i < deg_; ++i)
    if (a.c[i]) return false;
  return true;
}

bool Field::is_square(const Fe& a) const {
  if (is_zero(a)) return true;
  if (!base_) return powmod_u64(a.c[0], (p_ - 1) / 2, p_) == 1;
  return is_one(pow(a, BigInt((q_ - 1) / 2)));
}

void Field::setup_sqrt() {
  BigInt t = q_ - 1;
  int s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  ts_s_ = s;
  ts_t_ = t;
  // Fixed-seed search keeps the non-residue, and so every root, reproducible.
  std::mt19937_64 rng(0x5eed);
  for (;;) {
    Fe z = random(rng);
    if (!is_zero(z) && !is_square(z)) {
      ts_z_ = z;
      break;
    }
  }
}

std::optional<Fe> Field::sqrt(const Fe& a) const {
  if (is_zero(a)) return a;
  if (!is_square(a)) return std::nullopt;
  int m = ts_s_;
  Fe c = pow(ts_z_, ts_t_);
  Fe t = pow(a, ts_t_);
  Fe r = pow(a, BigInt((ts_t_ + 1) / 2));
  while (!is_one(t)) {
    int i = 0;
    Fe tt = t;
    while (!is_one(tt)) {
      tt = sqr(tt);
      ++i;
    }
    Fe b = c;
    for (int k = 0; k < m - i - 1; ++k) b = sqr(b);
    m = i;
    c = sqr(b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return canonical_sign(r);
}

int Field::compare(const Fe& a, const Fe& b) const {
  for (int i = 0; i < deg_; ++i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
  }
  return 0;
}

Fe Field::canonical_sign(const Fe& a) const {
  Fe n = neg(a);
  return compare(n, a) < 0 ? n : a;
}

Fe Field::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<uint64_t> d(0, p_ - 1);
  Fe r;
  for (int i = 0; i < deg_; ++i) r.c[i] = d(rng);
  return r;
}

std::vector<uint64_t> Field::coeffs(const Fe& a) const {
  return std::vector<uint64_t>(a.c.begin(), a.c.begin() + deg_);
}

Fe Field::from_coeffs(const std::vector<uint64_t>& v) const {
  if (static_cast<int>(v.size()) > deg_) {
    throw Error(Errc::InvalidArgument, "too many coefficients for field degree");
  }
  Fe r;
  for (size_t i = 0; i < v.size(); ++i) r.c[i] = v[i] % p_;
  return r;
}

std::string Field::to_string(const Fe& a) const {
  if (deg_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < deg_; ++i) {
    if (i) os << ',';
    os << a.c[i];
  }
  os << ']';
  return os.str();
}

std::vector<std::vector<std::vector<uint64_t>>> Field::tower() const {
  std::vector<const Field*> chain;
  for (const Field* f = this; f->base_; f = f->base_.get()) chain.push_back(f);
  std::vector<std::vector<std::vector<uint64_t>>> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Field* f = *it;
    out.push_back({f->base_->coeffs(f->c_), f->base_->coeffs(f->b_), {1}});
  }
  return out;
}

std::pair<FieldPtr, Fe> adjoin_sqrt(const FieldPtr& K, const Fe& a) {
  if (K->degree() * 2 > kMaxDegree) {
    throw Error(Errc::DegreeOverflow, "extension degree would exceed 8");
  }
  if (K->is_square(a)) throw Error(Errc::SquareInField, "element is already a square");
  auto L = Field::extend(K, K->zero(), K->neg(a));
  return {L, L->gen()};
}

const Field* common_field(const Field* a, const Field* b) {
  if (a == b) return a;
  if (a->contains(*b)) return a;
  if (b->contains(*a)) return b;
  throw Error(Errc::FieldMismatch, "elements live in unrelated fields");
}

El operator+(const El& a, const El& b) {
  const Field* F = common_field(a.F_, b.F_);
  return El(F, F->add(a.v_, b.v_));
}
El operator-(const El& a, const El& b) {
  const Field* F = common_field(a.F_, b.F_);
  return El(F, F->sub(a.v_, b.v_));
}
El operator*(const El& a, const El& b) {
  const Field* F = common_field(a.F_, b.F_);
  return El(F, F->mul(a.v_, b.v_));
}
El operator/(const El& a, const El& b) {
  const Field* F = common_field(a.F_, b.F_);
  return El(F, F->div(a.v_, b.v_));
}
bool El::operator==(const El& o) const {
  const Field* F = common_field(F_, o.F_);
  return F->compare(v_, o.v_) == 0;
}
El El::pow(int64_t e) const {
  if (e < 0) return El(F_, F_->pow(F_->inv(v_), static_cast<uint64_t>(-e)));
  return El(F_, F_->pow(v_, static_cast<uint64_t>(e)));
}
std::optional<El> El::sqrt() const {
  auto r = F_->sqrt(v_);
  if (!r) return std::nullopt;
  return El(F_, *r);
}

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::SquareInField: return "SquareInField";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::ZeroConstantTerm: return "ZeroConstantTerm";
    case Errc::NonSquareLeadingTerm: return "NonSquareLeadingTerm";
    case Errc::OddValuation: return "OddValuation";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::NoSolution: return "NoSolution";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::ZeroI4: return "ZeroI4";
    case Errc::NonGenericInvariants: return "NonGenericInvariants";
    case Errc::NoConicPoint: return "NoConicPoint";
    case Errc::PointAtInfinity: return "PointAtInfinity";
    case Errc::NonSquareBranch: return "NonSquareBranch";
    case Errc::NoGenericPoint: return "NoGenericPoint";
    case Errc::ParseError: return "ParseError";
    case Errc::WrongArity: return "WrongArity";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NonDiagonalSolution: return "NonDiagonalSolution";
    case Errc::ZeroG1: return "ZeroG1";
    case Errc::NotOnHumbert: return "NotOnHumbert";
    case Errc::NonSquare: return "NonSquare";
    case Errc::DegenerateGundlach: return "DegenerateGundlach";
    case Errc::InconsistentChainRule: return "InconsistentChainRule";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::EqualRoots: return "EqualRoots";
    case Errc::NonSquareDiscriminant: return "NonSquareDiscriminant";
    case Errc::NonInvertibleLeading: return "NonInvertibleLeading";
    case Errc::ResidualNonzero: return "ResidualNonzero";
    case Errc::CandidateRejected: return "CandidateRejected";
    case Errc::NotAPerfectSquare: return "NotAPerfectSquare";
    case Errc::SignMismatch: return "SignMismatch";
    case Errc::NonGenericPosition: return "NonGenericPosition";
  }
  return "Unknown";
}

}  // namespace isogeny2
