#include <gtest/gtest.h>

#include "newtonarc/scalar.hpp"
#include "newtonarc/rng.hpp"

using namespace newtonarc;

namespace {

RingPtr dual_numbers() {
  return Ring::test_ring(Ring::rationals(), {"e"}, {}, 2);
}

RingPtr eps3() {
  return Ring::test_ring(Ring::rationals(), {"e"}, {}, 3);
}

TEST(ScalarTest, RationalBasics) {
  auto Q = Ring::rationals();
  Scalar a = Scalar::of_rat(Q, BigRat(3, 2));
  Scalar b = Scalar::of_int(Q, 2);
  EXPECT_EQ((a * b).to_string(), "3");
  EXPECT_EQ((a + b).to_string(), "7/2");
  EXPECT_EQ((a - a).to_string(), "0");
  EXPECT_TRUE((a * a.inverse()).is_one());
  EXPECT_EQ(Q->characteristic(), 0u);
}

TEST(ScalarTest, PrimeFieldBasics) {
  auto F7 = Ring::prime_field(7);
  Scalar a = Scalar::of_rat(F7, BigRat(3, 2));  // 3 * 2^-1 = 3*4 = 12 = 5
  EXPECT_EQ(a.to_string(), "5");
  Scalar b = Scalar::of_int(F7, -1);
  EXPECT_EQ(b.to_string(), "6");
  EXPECT_TRUE((b * b).is_one());
  EXPECT_EQ(F7->characteristic(), 7u);
  EXPECT_THROW(Ring::prime_field(6), Error);
}

TEST(ScalarTest, TestRingNormalForm) {
  auto D = dual_numbers();
  Scalar e = Scalar::generator(D, 0);
  EXPECT_TRUE((e * e).is_zero());  // e^2 = 0
  Scalar x = Scalar::one(D) + e;
  EXPECT_EQ(x.to_string(), "e + 1");
  EXPECT_EQ(x.residue().to_string(), "1");
  EXPECT_EQ(e.residue().to_string(), "0");
  EXPECT_FALSE(e.is_unit());
  EXPECT_TRUE(x.is_unit());
}

TEST(ScalarTest, TestRingInverse) {
  auto D = dual_numbers();
  Scalar e = Scalar::generator(D, 0);
  // (2+e)^-1 = 1/2 - e/4
  Scalar x = Scalar::of_int(D, 2) + e;
  Scalar inv = x.inverse();
  EXPECT_TRUE((x * inv).is_one());
  Scalar expected = Scalar::of_rat(D, BigRat(1, 2)) + Scalar::of_rat(D, BigRat(-1, 4)) * e;
  EXPECT_EQ(inv, expected);
}

TEST(ScalarTest, NilpotencyProductOfAElementsVanishes) {
  auto E3 = eps3();
  Scalar e = Scalar::generator(E3, 0);
  EXPECT_FALSE((e * e).is_zero());
  EXPECT_TRUE((e * e * e).is_zero());
}

TEST(ScalarTest, MonomialIdealReduction) {
  // Q[e1,e2]/(e1^2, e2^2, e1 e2): every degree-2 monomial dies with a = 2
  auto R = Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 2);
  Scalar e1 = Scalar::generator(R, 0);
  Scalar e2 = Scalar::generator(R, 1);
  EXPECT_TRUE((e1 * e2).is_zero());
  EXPECT_TRUE((e1 * e1).is_zero());
  // explicit ideal member on top of the degree bound
  auto R2 = Ring::test_ring(Ring::rationals(), {"u", "v"}, {{1, 1}}, 3);
  Scalar u = Scalar::generator(R2, 0);
  Scalar v = Scalar::generator(R2, 1);
  EXPECT_TRUE((u * v).is_zero());
  EXPECT_FALSE((u * u).is_zero());
}

TEST(ScalarTest, EmbedBaseIntoTestRing) {
  auto F5 = Ring::prime_field(5);
  auto R = Ring::test_ring(F5, {"e"}, {}, 2);
  Scalar three = Scalar::of_int(F5, 3);
  Scalar emb = Scalar::embed(R, three);
  EXPECT_EQ(emb.residue(), three);
  EXPECT_EQ(R->characteristic(), 5u);
}

TEST(ScalarTest, RingAxiomsFuzz) {
  // associativity, commutativity, distributivity over fuzzed triples
  Rng rng(12345);
  std::vector<RingPtr> rings = {
      Ring::rationals(), Ring::prime_field(7),
      dual_numbers(), eps3(),
      Ring::test_ring(Ring::prime_field(5), {"e1", "e2"}, {{1, 1}}, 3)};
  for (const auto& ring : rings) {
    for (int i = 0; i < 200; ++i) {
      Scalar a = random_scalar(rng, ring);
      Scalar b = random_scalar(rng, ring);
      Scalar c = random_scalar(rng, ring);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, Scalar::zero(ring));
      if (a.is_unit()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      }
    }
  }
}

TEST(ScalarTest, PowIncludingNegative) {
  auto F7 = Ring::prime_field(7);
  Scalar two = Scalar::of_int(F7, 2);
  EXPECT_EQ(two.pow(3).to_string(), "1");   // 8 mod 7
  EXPECT_EQ(two.pow(-2), two.pow(2).inverse());
}

TEST(ScalarTest, MonomialBasisEnumeration) {
  auto D = dual_numbers();
  EXPECT_EQ(D->monomial_basis().size(), 2u);  // 1, e
  auto R = Ring::test_ring(Ring::rationals(), {"e1", "e2"}, {}, 3);
  // 1, e1, e2, e1^2, e1 e2, e2^2
  EXPECT_EQ(R->monomial_basis().size(), 6u);
}

}  // namespace
