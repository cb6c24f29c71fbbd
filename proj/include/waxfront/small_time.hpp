#pragma once

// Two-term small-time expansion of the front and temperature:
//   h(t) = H1 t + H2 t^2 + O(t^3),
//   u(X, t) = 1 + t U1(X) + t^2 U2(X) + O(t^3),  X = x / t.

#include <cmath>
#include <utility>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"

namespace waxfront {

struct SmallTimeCoefficients {
  double H1 = 0.0;
  double H2 = 0.0;
  double dprime1 = 0.0;  ///< D'(1)
  double eps = 0.0;
  double k = 0.0;

  double U1(double X) const noexcept { return k * (X - (k - 1.0)); }

  double U2(double X) const noexcept {
    const double km1 = k - 1.0;
    const double quad = 0.5 * eps * k * km1 + 0.5 * dprime1 * k * k;
    const double lin = k * k * km1 - dprime1 * k * k * km1;
    const double con = k * k * km1 * km1 * (0.5 * (eps - dprime1) + 1.0) +
                       0.5 * k * k * k * km1 + 0.5 * eps * k * km1 * km1 * km1;
    return -quad * X * X - lin * X + con;
  }

  /// Horizon where |H2| t = 0.1 H1.
  double validity_horizon() const noexcept { return 0.1 * H1 / std::abs(H2); }
};

inline SmallTimeCoefficients make_small_time(const ConductivityModel& model, double eps, double k) {
  SmallTimeCoefficients c;
  c.k = k;
  c.eps = eps;
  c.dprime1 = model.dD(1.0);
  c.H1 = k - 1.0;
  c.H2 = -0.5 * k * (k - 1.0) * (k + eps * (k - 1.0));
  return c;
}

inline double h_series(const SmallTimeCoefficients& c, double t) {
  return c.H1 * t + c.H2 * t * t;
}

/// Series temperature in the scaled coordinate X = x / t.
inline double u_series(const SmallTimeCoefficients& c, double X, double t) {
  return 1.0 + t * c.U1(X) + t * t * c.U2(X);
}

/// Limits of (u_x, u_xx) as t -> 0+.
inline std::pair<double, double> initial_slope_limits(const SmallTimeCoefficients& c) {
  return {c.k, -c.eps * c.k * (c.k - 1.0) - c.dprime1 * c.k * c.k};
}

}  // namespace waxfront
