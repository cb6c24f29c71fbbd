#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "waxfront/conductivity.hpp"

using namespace waxfront;

namespace {

// Composite Gauss-Legendre (5 points per panel), independent of the library.
template <class Fn>
double gauss(Fn f, double a, double b, int panels = 200) {
  static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                              0.9061798459386640};
  static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                              0.4786286704993665, 0.2369268850561891};
  double s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double m = a + (p + 0.5) * h;
    for (int q = 0; q < 5; ++q) s += w[q] * f(m + 0.5 * h * x[q]);
  }
  return 0.5 * h * s;
}

}  // namespace

TEST(Quadratic, PointValues) {
  EXPECT_DOUBLE_EQ(eval_D(ConductivityModel::quadratic(3), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_D(ConductivityModel::quadratic(0), 0.37), 1.0);
  EXPECT_DOUBLE_EQ(eval_D(ConductivityModel::quadratic(-3), 0.5), 0.25);
  EXPECT_DOUBLE_EQ(eval_F(ConductivityModel::quadratic(0), 0.5), 0.5);
  EXPECT_NEAR(eval_F(ConductivityModel::quadratic(3), 1.0), 1.5, 1e-15);
  EXPECT_NEAR(eval_F(ConductivityModel::quadratic(3), 0.5), 0.75, 1e-15);
}

TEST(Quadratic, ClosedFormMatchesQuadrature) {
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    for (int j = 0; j <= 20; ++j) {
      const double X = j / 20.0;
      const double ref = gauss([&](double u) { return 1.0 + c * u * (1.0 - u); }, 0.0, X, 10);
      EXPECT_NEAR(eval_F(m, X), ref, 1e-12) << "c=" << c << " X=" << X;
    }
  }
}

TEST(Quadratic, InverseExamplesAndRoundTrip) {
  EXPECT_NEAR(invert_F(ConductivityModel::quadratic(0), 0.25), 0.25, 1e-12);
  EXPECT_NEAR(invert_F(ConductivityModel::quadratic(3), 0.75), 0.5, 1e-12);
  EXPECT_NEAR(invert_F(ConductivityModel::quadratic(3), 1.5), 1.0, 1e-12);
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    for (int j = 0; j < 1000; ++j) {
      const double X = (j + 0.5) / 1000.0;
      EXPECT_LE(std::abs(invert_F(m, eval_F(m, X)) - X), 10 * kInverseTolerance);
    }
  }
}

TEST(Quadratic, MonotoneAndDerivativeConsistent) {
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    double prev = eval_F(m, 0.0);
    for (int j = 1; j <= 200; ++j) {
      const double cur = eval_F(m, j / 200.0);
      EXPECT_GT(cur, prev);
      prev = cur;
    }
    const double d = 1e-5;
    for (int j = 1; j < 20; ++j) {
      const double X = j / 20.0;
      const double fd = (m.F(X + d) - m.F(X - d)) / (2 * d);
      EXPECT_NEAR(fd, eval_D(m, X), 1e-6 * eval_D(m, X));
    }
  }
}

TEST(Quadratic, RejectsNonPositive) {
  EXPECT_THROW(ConductivityModel::quadratic(-4), InvalidConfig);
  EXPECT_THROW(ConductivityModel::quadratic(-5), InvalidConfig);
  EXPECT_NO_THROW(ConductivityModel::quadratic(-3.99));
}

TEST(Conductivity, RangeHandling) {
  const auto m = ConductivityModel::quadratic(2);
  EXPECT_THROW(eval_D(m, 1.5), OutOfRange);
  EXPECT_THROW(eval_D(m, -0.1), OutOfRange);
  EXPECT_DOUBLE_EQ(eval_D(m, 1.0 + 1e-10), 1.0);
  EXPECT_THROW(invert_F(m, m.F_max() + 0.1), OutOfRange);
}

TEST(Quadratic, Bounds) {
  for (int c = -3; c <= 3; ++c) {
    const auto m = ConductivityModel::quadratic(c);
    double lo = 1e9, hi = -1e9;
    for (int j = 0; j <= 1000; ++j) {
      lo = std::min(lo, m.D(j / 1000.0));
      hi = std::max(hi, m.D(j / 1000.0));
    }
    EXPECT_NEAR(m.d_min(), lo, 1e-12);
    EXPECT_NEAR(m.d_max(), hi, 1e-12);
    for (double k : {2.0, 10.0, 20.0}) {
      double sd = -1e9, sdd = -1e9;
      for (int j = 0; j <= 1000; ++j) {
        const double u = 1.0 / k + (1.0 - 1.0 / k) * j / 1000.0;
        sd = std::max(sd, m.D(u));
        sdd = std::max(sdd, m.dD(u));
      }
      EXPECT_NEAR(m.sup_D(1.0 / k), sd, 1e-5);
      EXPECT_NEAR(m.sup_dD(1.0 / k), sdd, 1e-12);
    }
  }
}

TEST(Tabulated, ReproducesSmoothData) {
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j <= 40; ++j) {
    const double u = j / 40.0;
    pts.emplace_back(u, 1.0 + 2.0 * u * (1.0 - u));
  }
  const auto tab = ConductivityModel::tabulated(pts);
  const auto ref = ConductivityModel::quadratic(2);
  for (int j = 0; j <= 100; ++j) {
    const double u = j / 100.0;
    EXPECT_NEAR(tab.D(u), ref.D(u), 2e-4);
    EXPECT_NEAR(tab.F(u), ref.F(u), 1e-5);
  }
  EXPECT_NEAR(tab.F(0.0), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(tab.D(1.0), 1.0);
  for (int j = 1; j < 50; ++j) {
    const double y = tab.F_max() * j / 50.0;
    EXPECT_NEAR(tab.F(invert_F(tab, y)), y, 1e-11);
  }
}

TEST(Tabulated, FMatchesIndependentQuadrature) {
  const std::vector<std::pair<double, double>> pts{
      {0.0, 0.6}, {0.2, 0.9}, {0.5, 1.4}, {0.7, 1.3}, {1.0, 1.0}};
  const auto tab = ConductivityModel::tabulated(pts);
  // panels split at the knots, where the interpolant is only C^1
  auto oracle = [&](double X) {
    double s = 0.0, a = 0.0;
    for (double knot : {0.2, 0.5, 0.7, 1.0}) {
      const double b = std::min(knot, X);
      if (b > a) s += gauss([&](double u) { return tab.D(u); }, a, b);
      a = std::max(a, b);
    }
    return s;
  };
  for (int j = 0; j <= 10; ++j) {
    const double X = j / 10.0;
    EXPECT_NEAR(tab.F(X), oracle(X), 1e-10);
  }
}

TEST(Tabulated, PreservesMonotoneData) {
  const std::vector<std::pair<double, double>> pts{
      {0.0, 3.0}, {0.1, 2.9}, {0.2, 1.2}, {0.6, 1.15}, {1.0, 1.0}};
  const auto tab = ConductivityModel::tabulated(pts);
  double prev = tab.D(0.0);
  for (int j = 1; j <= 1000; ++j) {
    const double cur = tab.D(j / 1000.0);
    EXPECT_LE(cur, prev + 1e-14);
    EXPECT_GT(cur, 0.0);
    prev = cur;
  }
}

TEST(Tabulated, Validation) {
  EXPECT_THROW(ConductivityModel::tabulated({{0.0, 1.0}}), InvalidConfig);
  EXPECT_THROW(ConductivityModel::tabulated({{0.0, 1.0}, {0.9, 1.0}}), InvalidConfig);
  EXPECT_THROW(ConductivityModel::tabulated({{0.0, 1.0}, {1.0, 1.2}}), InvalidConfig);
  EXPECT_THROW(ConductivityModel::tabulated({{0.0, -1.0}, {1.0, 1.0}}), InvalidConfig);
  EXPECT_THROW(ConductivityModel::tabulated({{0.0, 1.0}, {0.0, 1.0}, {1.0, 1.0}}), InvalidConfig);
  EXPECT_NO_THROW(ConductivityModel::tabulated({{1.0, 1.0}, {0.0, 2.0}}));
}
