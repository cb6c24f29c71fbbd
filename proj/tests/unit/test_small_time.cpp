#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <tuple>

#include "waxfront/small_time.hpp"

using namespace waxfront;

TEST(SmallTime, Coefficients) {
  const auto c = make_small_time(ConductivityModel::quadratic(0), 0.1, 2);
  EXPECT_DOUBLE_EQ(c.H1, 1.0);
  EXPECT_DOUBLE_EQ(c.H2, -2.1);
  EXPECT_DOUBLE_EQ(h_series(c, 0.0), 0.0);
  EXPECT_NEAR(h_series(c, 0.01), 0.00979, 1e-15);
  EXPECT_DOUBLE_EQ(make_small_time(ConductivityModel::quadratic(1), 0.5, 2).H2, -2.5);
  for (double k : {1.5, 2.0, 10.0}) {
    for (double eps : {0.1, 1.0}) {
      const auto s = make_small_time(ConductivityModel::quadratic(2), eps, k);
      EXPECT_GT(s.H1, 0.0);
      EXPECT_LT(s.H2, 0.0);
      EXPECT_NEAR(std::abs(s.H2) * s.validity_horizon(), 0.1 * s.H1, 1e-15);
    }
  }
}

TEST(SmallTime, ProfileValues) {
  const auto c = make_small_time(ConductivityModel::quadratic(0), 0.1, 2);
  EXPECT_DOUBLE_EQ(c.U1(1.0), 0.0);
  EXPECT_DOUBLE_EQ(c.U1(0.0), -2.0);
  EXPECT_NEAR(c.U2(0.0), 8.3, 1e-13);
  EXPECT_DOUBLE_EQ(u_series(c, 0.0, 0.0), 1.0);
}

TEST(SmallTime, SlopeLimits) {
  auto [a, b] = initial_slope_limits(make_small_time(ConductivityModel::quadratic(0), 0.1, 2));
  EXPECT_DOUBLE_EQ(a, 2.0);
  EXPECT_NEAR(b, -0.2, 1e-15);
  std::tie(a, b) = initial_slope_limits(make_small_time(ConductivityModel::quadratic(3), 0.5, 2));
  EXPECT_DOUBLE_EQ(a, 2.0);
  EXPECT_NEAR(b, 11.0, 1e-14);
  std::tie(a, b) = initial_slope_limits(make_small_time(ConductivityModel::quadratic(0), 0.1, 1.0 + 1e-9));
  EXPECT_NEAR(a, 1.0, 1e-8);
}

TEST(SmallTime, InitialFrontSpeed) {
  const auto c = make_small_time(ConductivityModel::quadratic(-2), 0.5, 10);
  for (double d : {1e-3, 1e-5, 1e-7}) {
    EXPECT_NEAR(h_series(c, d) / d, 9.0, std::abs(c.H2) * d * 1.0000001);
  }
}

// Substituting the two-term series into the full model
//   eps u_t = (D(u) u_x)_x,  D(u) u_x = k u at x = 0,
//   u = 1 and h_t = D(u) u_x - 1 at x = h,
// leaves residuals whose order in t is fixed by the truncation: O(t) in the
// interior (the O(1) balance must cancel) and O(t^2), O(t^3), O(t^2) in the
// three boundary conditions. Derivatives in X are taken by differences,
// which are exact for the polynomial profiles up to rounding.
TEST(SmallTime, SeriesSolvesModelToStatedOrder) {
  for (int cc : {-3, 0, 2}) {
    for (double k : {2.0, 10.0}) {
      for (double eps : {0.1, 1.0}) {
        const auto m = ConductivityModel::quadratic(cc);
        const auto s = make_small_time(m, eps, k);
        const double d = 1e-3;
        auto d1 = [&](auto f, double X) { return (f(X + d) - f(X - d)) / (2 * d); };
        auto d2 = [&](auto f, double X) { return (f(X + d) - 2 * f(X) + f(X - d)) / (d * d); };
        auto U1 = [&](double X) { return s.U1(X); };
        auto U2 = [&](double X) { return s.U2(X); };
        auto residuals = [&](double t) {
          const double Xh = h_series(s, t) / t;
          auto u = [&](double X) { return 1.0 + t * U1(X) + t * t * U2(X); };
          auto ux = [&](double X) { return d1(U1, X) + t * d1(U2, X); };
          double pde = 0.0;
          for (int j = 0; j <= 10; ++j) {
            const double X = Xh * j / 10.0;
            const double uxx = d2(U1, X) / t + d2(U2, X);
            const double ut = U1(X) - X * d1(U1, X) + t * (2 * U2(X) - X * d1(U2, X));
            const double r = eps * ut - m.D(u(X)) * uxx - m.dD(u(X)) * ux(X) * ux(X);
            pde = std::max(pde, std::abs(r));
          }
          const double wall = std::abs(m.D(u(0)) * ux(0) - k * u(0));
          const double front = std::abs(u(Xh) - 1.0);
          const double ht = s.H1 + 2 * s.H2 * t;
          const double stefan = std::abs(ht - (m.D(u(Xh)) * ux(Xh) - 1.0));
          return std::array<double, 4>{pde, wall, front, stefan};
        };
        const auto r1 = residuals(2e-4);
        const auto r2 = residuals(1e-4);
        const double lo[4] = {1.8, 3.6, 7.0, 3.6};
        const double hi[4] = {2.2, 4.4, 9.0, 4.4};
        for (int q = 0; q < 4; ++q) {
          if (r1[q] < 1e-13) continue;
          const double ratio = r1[q] / r2[q];
          EXPECT_GT(ratio, lo[q]) << "residual " << q << " c=" << cc << " k=" << k << " eps=" << eps;
          EXPECT_LT(ratio, hi[q]) << "residual " << q << " c=" << cc << " k=" << k << " eps=" << eps;
        }
      }
    }
  }
}
