#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace isogeny2;
using namespace fixtures;

TEST(Field, PrimeArithmetic) {
  auto F = Fp();
  Fe a = F->from_int(-3), b = F->from_int(7);
  EXPECT_EQ(F->add(a, b), F->from_int(4));
  EXPECT_EQ(F->mul(a, b), F->from_int(-21));
  EXPECT_EQ(F->mul(b, F->inv(b)), F->one());
  EXPECT_EQ(F->rat(1, 2), F->from_int((kP + 1) / 2));
  EXPECT_THROW(F->inv(F->zero()), Error);
}

TEST(Field, RejectsCompositeModulus) {
  EXPECT_THROW(Field::prime(10003), Error);
  EXPECT_NO_THROW(Field::prime(10007));
}

TEST(Field, ExtensionNeedsIrreducible) {
  auto F = Fp();
  // t^2 - 4 = (t - 2)(t + 2)
  EXPECT_THROW(Field::extend(F, F->zero(), F->from_int(-4)), Error);
  auto K = Fp2();
  EXPECT_EQ(K->degree(), 2);
  Fe a = K->gen();
  // a^2 + a + 2 = 0
  EXPECT_TRUE(K->is_zero(K->add(K->add(K->sqr(a), a), K->from_int(2))));
}

TEST(Field, TowerToDegreeEight) {
  auto F = Field::prime(10007);
  FieldPtr K = F;
  std::mt19937_64 rng(1);
  while (K->degree() < kMaxDegree) {
    Fe x;
    do x = K->random(rng);
    while (K->is_square(x));
    K = adjoin_sqrt(K, x).first;
  }
  EXPECT_EQ(K->degree(), 8);
  Fe x;
  do x = K->random(rng);
  while (K->is_square(x));
  EXPECT_THROW(adjoin_sqrt(K, x), Error);
  EXPECT_EQ(K->tower().size(), 3u);
}

TEST(Field, CanonicalSqrtIsSmallerRoot) {
  auto F = Fp();
  auto r = F->sqrt(F->from_int(5));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->c[0], 3892u);
  EXPECT_EQ(F->neg(*r).c[0], static_cast<uint64_t>(kSqrt5));
}

class FieldProperties : public ::testing::TestWithParam<int> {};

TEST_P(FieldProperties, RingAxiomsAndRoots) {
  std::mt19937_64 rng(100 + GetParam());
  FieldPtr K = Field::prime(GetParam() % 2 ? 10007 : kP);
  for (int level = 0; level < 3; ++level) {
    for (int i = 0; i < 50; ++i) {
      Fe a = K->random(rng), b = K->random(rng), c = K->random(rng);
      EXPECT_EQ(K->mul(a, K->add(b, c)), K->add(K->mul(a, b), K->mul(a, c)));
      EXPECT_EQ(K->mul(K->mul(a, b), c), K->mul(a, K->mul(b, c)));
      if (!K->is_zero(a)) EXPECT_TRUE(K->is_one(K->mul(a, K->inv(a))));
      Fe s = K->sqr(a);
      auto r = K->sqrt(s);
      ASSERT_TRUE(r);
      EXPECT_EQ(K->sqr(*r), s);
      EXPECT_LE(K->compare(*r, K->neg(*r)), 0);
      EXPECT_EQ(K->frobenius(K->mul(a, b)), K->mul(K->frobenius(a), K->frobenius(b)));
    }
    Fe x;
    do x = K->random(rng);
    while (K->is_square(x));
    EXPECT_FALSE(K->sqrt(x));
    K = adjoin_sqrt(K, x).first;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FieldProperties, ::testing::Range(0, 4));

TEST(Field, SubfieldElementsEmbed) {
  auto K = Fp2();
  auto F = K->base();
  Fe x = F->from_int(1234);
  EXPECT_TRUE(K->in_prime_field(x));
  EXPECT_EQ(K->mul(x, K->gen()), K->from_coeffs({0, 1234}));
  El a(F, x), b(K, K->gen());
  EXPECT_EQ((a * b).field(), K.get());
}
