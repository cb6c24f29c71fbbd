#include <gtest/gtest.h>

#include <cmath>

#include "waxfront/steady_state.hpp"

using namespace waxfront;

namespace {

double simpson(double (*f)(double, double), double c, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a, c) + f(b, c);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h, c);
  return s * h / 3.0;
}

double quad_D(double u, double c) { return 1.0 + c * u * (1.0 - u); }

}  // namespace

TEST(SteadyHeight, Examples) {
  EXPECT_EQ(steady_height(ConductivityModel::quadratic(0), 2.0), 0.5);
  EXPECT_NEAR(steady_height(ConductivityModel::quadratic(3), 2.0), 0.75, 1e-12);
  EXPECT_NEAR(steady_height(ConductivityModel::quadratic(0), 1e8), 1.0, 1e-7);
}

TEST(SteadyHeight, AgreesWithQuadrature) {
  for (int c = -3; c <= 3; ++c) {
    for (double k : {1.5, 2.0, 10.0, 20.0}) {
      const double ref = simpson(quad_D, c, 1.0 / k, 1.0);
      EXPECT_NEAR(steady_height(ConductivityModel::quadratic(c), k), ref, 1e-10);
    }
  }
}

TEST(SteadyHeight, RequiresGrowth) {
  EXPECT_THROW(steady_height(ConductivityModel::quadratic(0), 1.0), NoSteadyState);
  EXPECT_THROW(steady_height(ConductivityModel::quadratic(0), 0.5), NoSteadyState);
}

TEST(SteadyHeight, IncreasingInKWithDerivative) {
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    double prev = steady_height(m, 1.05);
    for (double k = 1.1; k < 30; k *= 1.2) {
      const double cur = steady_height(m, k);
      EXPECT_GT(cur, prev);
      prev = cur;
      const double d = 1e-5;
      const double fd = (steady_height(m, k + d) - steady_height(m, k - d)) / (2 * d);
      EXPECT_NEAR(steady_height_derivative(m, k), fd, 1e-7);
    }
  }
  EXPECT_DOUBLE_EQ(steady_height_derivative(ConductivityModel::quadratic(0), 2.0), 0.25);
  EXPECT_DOUBLE_EQ(steady_height_derivative(ConductivityModel::quadratic(3), 2.0), 0.4375);
  EXPECT_DOUBLE_EQ(steady_height_derivative(ConductivityModel::quadratic(0), 1.0), 1.0);
}

TEST(SteadyProfile, Examples) {
  const auto m0 = ConductivityModel::quadratic(0);
  EXPECT_NEAR(steady_profile(m0, 2, 0.25), 0.75, 1e-12);
  EXPECT_NEAR(steady_profile(m0, 2, 0.0), 0.5, 1e-12);
  EXPECT_EQ(steady_profile(ConductivityModel::quadratic(3), 2, 0.75), 1.0);
  EXPECT_THROW(steady_profile(m0, 2, 0.6), OutOfRange);
}

TEST(SteadyProfile, KirchhoffLinearAndIncreasing) {
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    for (double k : {2.0, 10.0}) {
      const double hs = steady_height(m, k);
      EXPECT_NEAR(steady_profile(m, k, 0.0), 1.0 / k, 1e-12);
      double prev = steady_profile(m, k, 0.0);
      const double d = 1e-6;
      for (int j = 1; j < 100; ++j) {
        const double x = hs * j / 100.0;
        const double u = steady_profile(m, k, x);
        EXPECT_GT(u, prev);
        prev = u;
        const double slope =
            (m.F(steady_profile(m, k, x + d)) - m.F(steady_profile(m, k, x - d))) / (2 * d);
        EXPECT_NEAR(slope, 1.0, 1e-6);
      }
    }
  }
}

TEST(MeanConductivity, Examples) {
  EXPECT_DOUBLE_EQ(mean_conductivity(ConductivityModel::quadratic(0), 2), 1.0);
  EXPECT_NEAR(mean_conductivity(ConductivityModel::quadratic(3), 2), 1.5, 1e-12);
  const auto m = ConductivityModel::quadratic(-3);
  EXPECT_NEAR(mean_conductivity(m, 10), steady_height(m, 10) / 0.9, 1e-14);
  EXPECT_NEAR(mean_conductivity(m, 10), simpson(quad_D, -3, 0.1, 1.0) / 0.9, 1e-10);
}

TEST(SteadyCurvature, ClosedFormAgreesWithDifferences) {
  const auto m = ConductivityModel::quadratic(3);
  const double k = 10;
  const double hs = steady_height(m, k);
  const double d = 1e-4;
  for (int j = 1; j < 10; ++j) {
    const double x = hs * j / 10.0;
    const double fd = (steady_profile(m, k, x + d) - 2 * steady_profile(m, k, x) +
                       steady_profile(m, k, x - d)) /
                      (d * d);
    EXPECT_NEAR(steady_curvature(m, k, x), fd, 1e-4);
  }
}

// An interior inflection needs D' to vanish inside (1/k, 1); for the
// quadratic family that is u = 1/2, so k > 2 with c != 0.
TEST(SteadyInflection, MatchesCriticalPointCriterion) {
  for (int c = -3; c <= 3; ++c) {
    for (double k : {1.5, 2.0, 3.0, 10.0, 20.0}) {
      const auto m = ConductivityModel::quadratic(c);
      const bool expected = c != 0 && 1.0 / k < 0.5;
      const auto x = steady_inflection_point(m, k);
      EXPECT_EQ(x.has_value(), expected) << "c=" << c << " k=" << k;
      EXPECT_EQ(conductivity_has_interior_critical_point(m, k), expected);
      if (x) EXPECT_NEAR(steady_profile(m, k, *x), 0.5, 1e-9);
    }
  }
}
