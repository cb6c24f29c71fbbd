#include <gtest/gtest.h>

#include <cmath>

#include "waxfront/eps_asymptotics.hpp"
#include "waxfront/large_time_eigen.hpp"

using namespace waxfront;

TEST(OuterG, Examples) {
  const auto m = ConductivityModel::quadratic(0);
  EXPECT_DOUBLE_EQ(G(m, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(G(m, 2, 1), 0.5);
  EXPECT_DOUBLE_EQ(G(m, 2, 1), steady_height(m, 2));
  EXPECT_THROW(G(m, 2, 0.0), OutOfRange);
  for (int c = -3; c <= 3; ++c) {
    const auto mc = ConductivityModel::quadratic(c);
    double prev = G(mc, 10, 0.01);
    for (int j = 2; j <= 1000; ++j) {
      const double cur = G(mc, 10, 0.01 * j);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(OuterG, Inverse) {
  const auto m = ConductivityModel::quadratic(0);
  EXPECT_DOUBLE_EQ(invert_G(m, 2, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(invert_G(m, 2, 0.5), 1.0);
  EXPECT_NEAR(invert_G(m, 2, 0.25), 4.0 / 3.0, 1e-12);
  EXPECT_THROW(invert_G(m, 2, 0.6), OutOfRange);
  for (int c = -3; c <= 3; ++c) {
    const auto mc = ConductivityModel::quadratic(c);
    const double hs = steady_height(mc, 20);
    for (int j = 1; j < 50; ++j) {
      const double a = invert_G(mc, 20, hs * j / 50);
      EXPECT_GE(a, 1.0);
      EXPECT_LE(a, 20.0);
      EXPECT_NEAR(G(mc, 20, a), hs * j / 50, 1e-12);
    }
  }
}

TEST(OuterRate, Examples) {
  EXPECT_DOUBLE_EQ(mu(ConductivityModel::quadratic(0), 2), 1.0);
  EXPECT_NEAR(mu(ConductivityModel::quadratic(3), 2), 0.6153846153846154, 1e-15);
  EXPECT_THROW(mu(ConductivityModel::quadratic(0), 1), NoSteadyState);
  for (int c = -3; c <= 3; ++c) {
    for (double k : {2.0, 10.0, 20.0}) {
      const auto m = ConductivityModel::quadratic(c);
      EXPECT_EQ(mu(m, k), lambda0_small_eps(m, k));
    }
  }
}

TEST(OuterFront, ClosedFormForConstantConductivity) {
  const auto m = ConductivityModel::quadratic(0);
  const auto o = integrate_h0(m, 2, 20, 0.01);
  for (int j = 1; j <= 20; ++j) {
    const double H = 0.49 * j / 20;
    const double t = -H - std::log(1 - 2 * H);
    EXPECT_NEAR(o.h0(t), H, 1e-6) << "H=" << H;
  }
  EXPECT_NEAR(o.h0(-0.25 - std::log(0.5)), 0.25, 1e-7);
}

TEST(OuterFront, Properties) {
  for (int c : {-3, 0, 3}) {
    for (double k : {2.0, 10.0}) {
      const auto m = ConductivityModel::quadratic(c);
      const auto o = integrate_h0(m, k, 20, 0.01);
      // initial slope k - 1
      EXPECT_NEAR(o.h0(1e-4) / 1e-4, k - 1.0, 0.01 * k * k);
      for (std::size_t j = 1; j < o.h0_values.size(); ++j) {
        // strictly increasing until the gap to h_s drops below rounding
        if (o.h_s - o.h0_values[j] > 1e-12) EXPECT_GT(o.h0_values[j], o.h0_values[j - 1]);
        else EXPECT_GE(o.h0_values[j], o.h0_values[j - 1]);
        EXPECT_LE(o.h0_values[j], o.h_s);
        const double a = o.slope_values[j] + 1.0;
        EXPECT_GE(a, 1.0);
        EXPECT_LE(a, k);
      }
      // wall temperature A / k falls from 1 towards 1/k
      double prev = o.wall_temperature(0.0);
      EXPECT_NEAR(prev, 1.0, 1e-12);
      for (double t = 0.1; t < 20; t += 0.1) {
        const double w = o.wall_temperature(t);
        EXPECT_LE(w, prev + 1e-12) << "t=" << t;  // inversion tolerance
        EXPECT_GE(w, 1.0 / k - 1e-12);
        prev = w;
      }
      // approach to h_s at rate mu
      const double r = std::log((o.h_s - o.h0(6.0)) / (o.h_s - o.h0(8.0))) / 2.0;
      EXPECT_NEAR(r, o.mu, 0.02 * o.mu);
    }
  }
}

TEST(OuterProfile, Examples) {
  const auto m = ConductivityModel::quadratic(0);
  EXPECT_DOUBLE_EQ(u0_profile(m, 2, 0.0, 0.0), 1.0);
  EXPECT_NEAR(u0_profile(m, 2, 0.25, 0.0), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(u0_profile(m, 2, 0.25, 0.25), 1.0);
  const auto m3 = ConductivityModel::quadratic(3);
  const double hs = steady_height(m3, 10);
  for (int j = 0; j <= 10; ++j) {
    const double x = hs * j / 10;
    EXPECT_NEAR(u0_profile(m3, 10, hs, x), steady_profile(m3, 10, x), 1e-12);
  }
  EXPECT_THROW(u0_profile(m, 2, 0.25, 0.3), OutOfRange);
}
