#include <gtest/gtest.h>

#include "apery/field.hpp"

namespace apery {
namespace {

TEST(Field, RationalArithmetic) {
  const auto q = Field::rational();
  const Scalar a(q, mpq_class(2, 3));
  const Scalar b(q, mpq_class(-5, 4));
  EXPECT_EQ((a + b).to_string(), "-7/12");
  EXPECT_EQ((a * b).to_string(), "-5/6");
  EXPECT_EQ((a / b).to_string(), "-8/15");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((a * a.inverse()).is_one());
}

TEST(Field, PrimeArithmeticWrapsAndInverts) {
  const auto f = Field::prime(7);
  const Scalar a(f, 5L);
  const Scalar b(f, 4L);
  EXPECT_EQ((a + b).to_string(), "2");
  EXPECT_EQ((a * b).to_string(), "6");
  EXPECT_EQ(a.inverse().to_string(), "3");
  EXPECT_EQ(Scalar(f, -1L).to_string(), "6");
  EXPECT_EQ(Scalar(f, mpq_class(1, 2)).to_string(), "4");
  EXPECT_THROW(Scalar(f, mpq_class(1, 7)), InputError);
  EXPECT_THROW(Scalar::zero(f).inverse(), Error);
}

TEST(Field, LargePrimeDoesNotOverflow) {
  const auto f = Field::prime(2305843009213693951ULL);
  const Scalar a(f, -1L);
  EXPECT_TRUE((a * a).is_one());
  EXPECT_TRUE((a * a.inverse()).is_one());
}

TEST(Field, RejectsNonPrimesAndMixedFields) {
  EXPECT_THROW(Field::prime(1), InputError);
  EXPECT_THROW(Field::prime(91), InputError);
  EXPECT_THROW(Field::prime(4), InputError);
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(1000000007ULL * 3));
  EXPECT_THROW(Scalar(Field::prime(5), 1L) + Scalar(Field::rational(), 1L), Error);
  EXPECT_THROW(Scalar(Field::prime(5), 1L) + Scalar(Field::prime(7), 1L), Error);
}

TEST(Field, Names) {
  EXPECT_EQ(Field::rational().to_string(), "QQ");
  EXPECT_EQ(Field::prime(101).to_string(), "GF(101)");
  EXPECT_EQ(Scalar(Field::prime(101), 7L).field(), Field::prime(101));
}

}  // namespace
}  // namespace apery
