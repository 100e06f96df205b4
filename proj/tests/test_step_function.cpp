#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "symspace/exact_scalar.hpp"
#include "symspace/step_function.hpp"

using symspace::Breakpoint;
using symspace::ExactScalar;
using symspace::StepFunction;

namespace {

StepFunction two_blocks(Breakpoint cut, double a, double b) { return StepFunction({cut, Breakpoint(1.0)}, {a, b}); }

}  // namespace

TEST(ExactScalar, KeepsTinyMagnitudes) {
  const ExactScalar t = ExactScalar::pow2(-2000);
  EXPECT_EQ(t.exp2(), -2000);
  EXPECT_EQ(t.mantissa(), 1.0);
  EXPECT_EQ(t.to_double(), 0.0);
  const ExactScalar back = t * ExactScalar::pow2(2000);
  EXPECT_EQ(back.to_double(), 1.0);
  EXPECT_EQ(ExactScalar(3.0).mantissa(), 1.5);
  EXPECT_EQ(ExactScalar(3.0).exp2(), 1);
}

TEST(ExactScalar, SqrtOfOddExponent) {
  const ExactScalar r = ExactScalar::pow2(-301).sqrt();
  EXPECT_NEAR(r.log2_abs(), -150.5, 1e-15);
  EXPECT_NEAR((r * r / ExactScalar::pow2(-301)).to_double(), 1.0, 4e-16);
}

TEST(ExactScalar, OrderingAcrossExponents) {
  EXPECT_LT(ExactScalar::pow2(-900), ExactScalar::pow2(-899));
  EXPECT_LT(-ExactScalar::pow2(-10), ExactScalar::pow2(-900));
  EXPECT_GT(ExactScalar(-1e-300), -ExactScalar::pow2(-2));
  EXPECT_EQ((ExactScalar(0.75) + ExactScalar(0.25)).to_double(), 1.0);
}

TEST(Breakpoint, DyadicDetection) {
  const Breakpoint b(0.125);
  ASSERT_TRUE(b.dyadic_exponent());
  EXPECT_EQ(*b.dyadic_exponent(), 3);
  EXPECT_FALSE(Breakpoint(0.3).dyadic_exponent());
  const Breakpoint deep = Breakpoint::dyadic(1500);
  EXPECT_EQ(deep.value(), 0.0);
  EXPECT_EQ(deep.log2(), -1500.0);
  EXPECT_LT(Breakpoint::dyadic(1501), deep);
  EXPECT_DOUBLE_EQ(Breakpoint::rational(1, 3).value(), 1.0 / 3.0);
}

TEST(StepFunction, RejectsBadBreakpoints) {
  EXPECT_THROW(StepFunction({Breakpoint(0.5)}, {1.0}), symspace::DomainError);
  EXPECT_THROW(StepFunction({Breakpoint(0.5), Breakpoint(0.25), Breakpoint(1.0)}, {1, 2, 3}),
               symspace::DomainError);
  EXPECT_THROW(StepFunction({Breakpoint(1.0)}, {NAN}), symspace::DomainError);
}

TEST(StepFunction, CanonicalMerge) {
  const StepFunction x({Breakpoint(0.25), Breakpoint(0.5), Breakpoint(1.0)}, {2.0, 2.0, 1.0});
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x.right(0).value(), 0.5);
  EXPECT_EQ(x.lengths()[0], 0.5);
}

TEST(StepFunction, FromLengthsFoldsSubUlpTail) {
  const double lengths[] = {1.0 - 1e-17, 1e-17};
  const double values[] = {1.0, 2.0};
  const StepFunction x = StepFunction::from_lengths(lengths, values);
  EXPECT_EQ(x.right(x.size() - 1).value(), 1.0);
}

TEST(Distribution, Examples) {
  EXPECT_EQ(distribution(two_blocks(0.25, 3.0, 1.0), 2.0), 0.25);
  EXPECT_EQ(distribution(two_blocks(0.25, 3.0, 1.0), 5.0), 0.0);
  EXPECT_EQ(distribution(StepFunction::constant(1.0), 1.0), 0.0);
  EXPECT_THROW(distribution(StepFunction::constant(1.0), 0.0), symspace::DomainError);
}

TEST(Rearrange, Examples) {
  const StepFunction dec = two_blocks(0.5, 3.0, 1.0);
  EXPECT_EQ(rearrange(dec), dec);
  EXPECT_EQ(rearrange(two_blocks(0.5, 1.0, 3.0)), dec);
  const StepFunction neg = two_blocks(Breakpoint::rational(1, 3), -2.0, 1.0);
  const StepFunction xs = rearrange(neg);
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_EQ(xs.values()[0], 2.0);
  EXPECT_EQ(xs.values()[1], 1.0);
  EXPECT_DOUBLE_EQ(xs.right(0).value(), 1.0 / 3.0);
}

TEST(Rearrange, TiesMerge) {
  const StepFunction x({Breakpoint(0.25), Breakpoint(0.5), Breakpoint(1.0)}, {1.0, -1.0, 0.5});
  const StepFunction xs = rearrange(x);
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_EQ(xs.right(0).value(), 0.5);
}

TEST(Integrate, Examples) {
  EXPECT_EQ(integrate(StepFunction::constant(2.5)), 2.5);
  EXPECT_EQ(integrate(two_blocks(0.5, 2.0, 0.0)), 1.0);
  EXPECT_EQ(integrate(two_blocks(0.5, 2.0, 4.0), 0.25, 0.75), 1.5);
  EXPECT_THROW(integrate(StepFunction::constant(1.0), 0.5, 0.25), symspace::DomainError);
}

TEST(LpNorm, Examples) {
  for (double p : {1.0, 1.5, 2.0, 7.0, double(INFINITY)}) EXPECT_DOUBLE_EQ(lp_norm(StepFunction::constant(1.0), p), 1.0);
  EXPECT_DOUBLE_EQ(lp_norm(two_blocks(0.25, 2.0, 0.0), 2.0), 1.0);
  EXPECT_THROW(lp_norm(StepFunction::constant(1.0), 0.5), symspace::DomainError);
}

TEST(DisjointSum, Examples) {
  const StepFunction x = two_blocks(0.3, 1.0, 4.0);
  const double one[] = {1.0};
  EXPECT_EQ(disjoint_sum(one, std::span<const StepFunction>(&x, 1)), x);
  const StepFunction parts[] = {StepFunction::indicator(0.5), StepFunction::indicator(0.5, 1.0)};
  const double ones[] = {1.0, 1.0};
  EXPECT_EQ(disjoint_sum(ones, parts), StepFunction::constant(1.0));
  const StepFunction overlapping[] = {StepFunction::indicator(0.5), StepFunction::indicator(0.25, 1.0)};
  EXPECT_THROW(disjoint_sum(ones, overlapping), symspace::OverlapError);
}

TEST(Indicator, HalfOpenBlocks) {
  const StepFunction c = StepFunction::indicator(0.25);
  EXPECT_EQ(c.value_at(0.25), 1.0);
  EXPECT_EQ(c.value_at(std::nextafter(0.25, 1.0)), 0.0);
}

// Property suite on random step functions with a brute-force grid oracle.
class StepProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
};

TEST_F(StepProperties, RearrangementMatchesGridOracle) {
  for (int trial = 0; trial < 40; ++trial) {
    const StepFunction x = testing_support::random_step(rng);
    const auto oracle = testing_support::grid_rearrangement(testing_support::to_grid(x));
    const auto ours = testing_support::to_grid(rearrange(x));
    ASSERT_EQ(oracle, ours);
  }
}

TEST_F(StepProperties, EquimeasurableAndMassPreserving) {
  for (int trial = 0; trial < 10000; ++trial) {
    const StepFunction x = testing_support::random_step(rng);
    const StepFunction xs = rearrange(x);
    for (std::size_t i = 1; i < xs.size(); ++i) ASSERT_GT(xs.values()[i - 1], xs.values()[i]);
    for (double v : x.values()) {
      const double tau = std::fabs(v);
      if (tau > 0.0) {
        ASSERT_EQ(distribution(xs, tau), distribution(x, tau));
      }
      ASSERT_EQ(distribution(xs, tau + 1.0 / 16.0), distribution(x, tau + 1.0 / 16.0));
    }
    ASSERT_EQ(integrate(xs), integrate(abs(x)));
    ASSERT_EQ(lp_norm(x, 1.0), integrate(abs(x)));
  }
}

TEST_F(StepProperties, ShuffleInvariance) {
  for (int trial = 0; trial < 1000; ++trial) {
    const StepFunction x = testing_support::random_step(rng);
    ASSERT_EQ(rearrange(testing_support::shuffled(x, rng)), rearrange(x));
  }
}

TEST_F(StepProperties, InnerProductAgainstGrid) {
  for (int trial = 0; trial < 20; ++trial) {
    const StepFunction x = testing_support::random_step(rng), y = testing_support::random_step(rng);
    const auto gx = testing_support::to_grid(x), gy = testing_support::to_grid(y);
    double s = 0.0;
    for (std::size_t c = 0; c < gx.size(); ++c) s += gx[c] * gy[c];
    ASSERT_EQ(inner_product(x, y), std::ldexp(s, -testing_support::kGridExp));
  }
}
