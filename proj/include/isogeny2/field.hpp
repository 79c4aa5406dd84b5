#pragma once

// Prime fields with word-size modulus and quadratic towers of degree <= 8.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isogeny2/errors.hpp"

namespace isogeny2 {

using BigInt = boost::multiprecision::cpp_int;

constexpr int kMaxDegree = 8;

// Coefficients over F_p in the flattened tower basis. An element of a field of
// degree d uses c[0..d); the lower half of a level is the base-field part.
struct Fe {
  std::array<uint64_t, kMaxDegree> c{};
  bool operator==(const Fe& o) const { return c == o.c; }
  bool operator!=(const Fe& o) const { return c != o.c; }
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // F_p; p must be an odd prime below 2^62.
  static FieldPtr prime(uint64_t p);
  // base[t]/(t^2 + b t + c); throws NotIrreducible / DegreeOverflow.
  static FieldPtr extend(const FieldPtr& base, const Fe& b, const Fe& c);

  uint64_t p() const { return p_; }
  int degree() const { return deg_; }
  const FieldPtr& base() const { return base_; }
  const Fe& min_b() const { return b_; }
  const Fe& min_c() const { return c_; }
  const BigInt& order() const { return q_; }
  bool is_prime_field() const { return !base_; }
  // True if this field equals or contains `other` through the tower.
  bool contains(const Field& other) const;

  Fe zero() const { return Fe{}; }
  Fe one() const {
    Fe r;
    r.c[0] = 1;
    return r;
  }
  Fe from_int(int64_t v) const;
  Fe from_u64(uint64_t v) const;
  Fe from_bigint(const BigInt& v) const;
  Fe rat(const BigInt& num, const BigInt& den) const;  // num/den reduced mod p
  Fe gen() const;  // image of t (requires extension)

  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;
  Fe mul(const Fe& a, const Fe& b) const;
  Fe sqr(const Fe& a) const { return mul(a, a); }
  Fe inv(const Fe& a) const;  // throws InvalidArgument on zero
  Fe div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }
  Fe pow(const Fe& a, const BigInt& e) const;
  Fe pow(const Fe& a, uint64_t e) const;
  Fe frobenius(const Fe& a) const { return pow(a, static_cast<uint64_t>(p_)); }

  bool is_zero(const Fe& a) const;
  bool is_one(const Fe& a) const { return a == one(); }
  bool in_prime_field(const Fe& a) const;

  bool is_square(const Fe& a) const;
  // Canonical root: the lexicographically smaller coefficient vector.
  std::optional<Fe> sqrt(const Fe& a) const;
  // -1, 0, 1 comparing c[0..deg) lexicographically.
  int compare(const Fe& a, const Fe& b) const;
  Fe canonical_sign(const Fe& a) const;  // min(a, -a)

  Fe random(std::mt19937_64& rng) const;

  std::string to_string(const Fe& a) const;
  std::vector<uint64_t> coeffs(const Fe& a) const;
  Fe from_coeffs(const std::vector<uint64_t>& v) const;
  // Minimal polynomials from the prime field upward, as {c, b, 1} lists of
  // flattened base coefficients.
  std::vector<std::vector<std::vector<uint64_t>>> tower() const;

  uint64_t mulmod(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
  }

 private:
  Field() = default;
  void mul_into(const uint64_t* x, const uint64_t* y, uint64_t* out) const;
  void setup_sqrt();

  uint64_t p_ = 0;
  int deg_ = 1;
  int half_ = 0;
  FieldPtr base_;
  Fe b_, c_;
  BigInt q_;
  // Tonelli-Shanks data: q - 1 = 2^s * t, z a fixed non-square.
  int ts_s_ = 0;
  BigInt ts_t_;
  Fe ts_z_;
};

// Field element bundled with its field, for formula-heavy code. Binary
// operations promote to the larger field when one operand lives in a subfield
// of the other. The field must outlive the element.
class El {
 public:
  El() = default;
  El(const Field* F, const Fe& v) : F_(F), v_(v) {}
  El(const FieldPtr& F, const Fe& v) : F_(F.get()), v_(v) {}
  static El of(const FieldPtr& F, int64_t v) { return El(F, F->from_int(v)); }
  static El rat(const FieldPtr& F, const BigInt& n, const BigInt& d) {
    return El(F, F->rat(n, d));
  }

  const Field* field() const { return F_; }
  const Fe& v() const { return v_; }
  bool is_zero() const { return F_->is_zero(v_); }
  El inv() const { return El(F_, F_->inv(v_)); }
  El pow(int64_t e) const;
  El sqr() const { return El(F_, F_->sqr(v_)); }
  std::optional<El> sqrt() const;

  El operator-() const { return El(F_, F_->neg(v_)); }
  friend El operator+(const El& a, const El& b);
  friend El operator-(const El& a, const El& b);
  friend El operator*(const El& a, const El& b);
  friend El operator/(const El& a, const El& b);
  friend El operator*(int64_t k, const El& a) { return El(a.F_, a.F_->mul(a.F_->from_int(k), a.v_)); }
  El& operator+=(const El& o) { return *this = *this + o; }
  El& operator-=(const El& o) { return *this = *this - o; }
  El& operator*=(const El& o) { return *this = *this * o; }
  bool operator==(const El& o) const;
  bool operator!=(const El& o) const { return !(*this == o); }
  std::string str() const { return F_->to_string(v_); }

 private:
  const Field* F_ = nullptr;
  Fe v_;
};

// Returns whichever of a, b contains the other; throws FieldMismatch otherwise.
const Field* common_field(const Field* a, const Field* b);

// K[t]/(t^2 - a) for a non-square a.
std::pair<FieldPtr, Fe> adjoin_sqrt(const FieldPtr& K, const Fe& a);

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p);
bool is_prime_u64(uint64_t n);

}  // namespace isogeny2
