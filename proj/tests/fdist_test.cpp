#include "pslab/stats/fdist.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracle/quadrature.hpp"

namespace pslab::stats {
namespace {

TEST(IncompleteBeta, ClosedForms) {
  // I_x(1, 1) = x; I_x(a, 1) = x^a; I_x(2, 2) = 3x^2 - 2x^3.
  for (const double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(incomplete_beta(1.0, 1.0, x), x, 1e-12);
    EXPECT_NEAR(incomplete_beta(3.5, 1.0, x), std::pow(x, 3.5), 1e-12);
    EXPECT_NEAR(incomplete_beta(2.0, 2.0, x), 3 * x * x - 2 * x * x * x, 1e-12);
  }
  EXPECT_NEAR(incomplete_beta(0.9, 0.9, 0.1), 0.11464699677582491921, 1e-10);
  EXPECT_NEAR(incomplete_beta(2.0, 3.0, 0.8), 0.97279999999999999805, 1e-10);
}

TEST(IncompleteBeta, RejectsBadArguments) {
  EXPECT_THROW(incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST(FUpperTail, ZeroIsOne) {
  for (const double d1 : {1.0, 2.0, 8.0})
    for (const double d2 : {1.0, 54.0}) EXPECT_EQ(f_upper_tail(0.0, d1, d2), 1.0);
}

TEST(FUpperTail, OneWithEqualDfIsHalf) {
  for (const double d : {1.0, 2.0, 3.0, 7.0, 54.0, 200.0}) {
    EXPECT_NEAR(f_upper_tail(1.0, d, d), 0.5, 1e-9) << d;
  }
}

TEST(FUpperTail, InfinityIsZero) {
  EXPECT_EQ(f_upper_tail(std::numeric_limits<double>::infinity(), 2, 54), 0.0);
}

TEST(FUpperTail, RejectsBadArguments) {
  EXPECT_THROW(f_upper_tail(-1.0, 2, 3), std::invalid_argument);
  EXPECT_THROW(f_upper_tail(1.0, 0, 3), std::invalid_argument);
  EXPECT_THROW(f_upper_tail(1.0, 2, -3), std::invalid_argument);
  EXPECT_THROW(f_upper_tail(std::nan(""), 2, 3), std::invalid_argument);
}

TEST(FUpperTail, AgreesWithQuadratureOracle) {
  const double fs[] = {0.1, 0.5, 1.0, 2.5, 4.0, 10.0, 30.0};
  const double dfs[][2] = {{1, 1}, {1, 10}, {2, 3}, {2, 54}, {4, 54}, {8, 54}, {5, 20}, {30, 7}, {4, 4}};
  for (const double f : fs) {
    for (const auto& df : dfs) {
      const double expected = oracle::f_upper_tail_by_quadrature(f, df[0], df[1]);
      EXPECT_NEAR(f_upper_tail(f, df[0], df[1]), expected, 1e-6)
          << "F = " << f << " df = (" << df[0] << ", " << df[1] << ")";
    }
  }
}

// Reference values from scipy.stats.f.sf.
TEST(FUpperTail, ReferenceValues) {
  EXPECT_NEAR(f_upper_tail(0.5, 1, 1), 0.6081734479693929, 1e-9);
  EXPECT_NEAR(f_upper_tail(1.0, 2, 3), 0.46475800154489, 1e-9);
  EXPECT_NEAR(f_upper_tail(2.5, 3, 10), 0.11903956265827816, 1e-9);
  EXPECT_NEAR(f_upper_tail(4.0, 5, 20), 0.0111837518552656, 1e-9);
  EXPECT_NEAR(f_upper_tail(10.0, 2, 54), 0.00020201102976086731, 1e-9);
  EXPECT_NEAR(f_upper_tail(0.2, 8, 54), 0.9896624539647303, 1e-9);
  EXPECT_NEAR(f_upper_tail(3.0, 4, 4), 0.15625, 1e-9);
  EXPECT_NEAR(f_upper_tail(1.7, 30, 7), 0.23990254645498377, 1e-9);
  EXPECT_NEAR(f_upper_tail(15.0, 1, 2), 0.060663563372275776, 1e-9);
}

TEST(FUpperTail, MonotoneInF) {
  for (const auto& df : {std::pair{1.0, 1.0}, std::pair{2.0, 54.0}, std::pair{8.0, 54.0}, std::pair{30.0, 7.0}}) {
    double prev = 1.0;
    for (double f = 0.0; f <= 50.0; f += 0.05) {
      const double p = f_upper_tail(f, df.first, df.second);
      ASSERT_LE(p, prev + 1e-15) << f;
      ASSERT_GE(p, 0.0);
      prev = p;
    }
  }
}

}  // namespace
}  // namespace pslab::stats
