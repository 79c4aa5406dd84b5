#pragma once

#include <random>

#include "isogeny2/curves.hpp"

namespace fixtures {

using namespace isogeny2;

constexpr uint64_t kP = 56311;

// The two Hilbert-normalized curves and their Gundlach invariants.
inline const std::vector<int64_t> kC = {11111, 54150, 0, 102, 0, 34724, 13425};
inline const std::vector<int64_t> kCp = {40502, 24699, 0, 40476, 0, 35850, 47601};
// C after moving its Weierstrass point 36392 to the origin.
inline const std::vector<int64_t> kCstd = {0, 1, 14713, 34825, 16387, 7399, 33461};
constexpr int64_t kWeierstrassU = 36392;
constexpr int64_t kSqrt5 = 52419;

inline FieldPtr Fp() {
  static const FieldPtr F = Field::prime(kP);
  return F;
}
// F_p(a) with a^2 + a + 2 = 0.
inline FieldPtr Fp2() {
  static const FieldPtr K = Field::extend(Fp(), Fp()->from_int(1), Fp()->from_int(2));
  return K;
}

inline Fe el(const FieldPtr& K, uint64_t a0, uint64_t a1) { return K->from_coeffs({a0, a1}); }

inline CurveModel random_curve(const FieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Fe> a(7);
    for (auto& x : a) x = F->random(rng);
    try {
      return CurveModel(BinaryForm{F, a});
    } catch (const Error&) {
    }
  }
}

inline Mat random_invertible(const FieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    Mat r(F, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.at(i, j) = F->random(rng);
    if (r.invertible()) return r;
  }
}

}  // namespace fixtures
