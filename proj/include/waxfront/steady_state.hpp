#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"

namespace waxfront {

inline constexpr double kSteadyRangeTolerance = 1e-12;

/// The unique steady wax layer for cooling parameter k > 1.
struct SteadyState {
  double k = 0.0;
  double h_s = 0.0;
};

/// h_s = F(1) - F(1/k).
inline double steady_height(const ConductivityModel& model, double k) {
  require_growth(k);
  return model.F(1.0) - model.F(1.0 / k);
}

inline SteadyState make_steady_state(const ConductivityModel& model, double k) {
  return SteadyState{k, steady_height(model, k)};
}

/// u_s(x) = F^{-1}(x + F(1/k)) for x in [0, h_s].
inline double steady_profile(const ConductivityModel& model, double k, double x) {
  const double hs = steady_height(model, k);
  if (!(x >= -kSteadyRangeTolerance && x <= hs + kSteadyRangeTolerance)) {
    throw OutOfRange("steady_profile: x = " + std::to_string(x) + " outside [0, h_s]");
  }
  x = std::clamp(x, 0.0, hs);
  if (x == hs) return 1.0;
  return invert_F(model, x + model.F(1.0 / k));
}

/// Mean of D over [1/k, 1]; h_s = (1 - 1/k) * mean_conductivity.
inline double mean_conductivity(const ConductivityModel& model, double k) {
  return steady_height(model, k) / (1.0 - 1.0 / k);
}

/// dh_s/dk = D(1/k) / k^2, defined for k >= 1.
inline double steady_height_derivative(const ConductivityModel& model, double k) {
  if (!(k >= 1.0)) throw NoSteadyState("steady_height_derivative needs k >= 1");
  return eval_D(model, 1.0 / k) / (k * k);
}

/// u_s''(x) = -D'(u_s) / D(u_s)^3.
inline double steady_curvature(const ConductivityModel& model, double k, double x) {
  const double u = steady_profile(model, k, x);
  const double d = model.D(u);
  return -model.dD(u) / (d * d * d);
}

/// Location of an interior inflection point of u_s, found from a sign
/// change of u_s'' on a uniform grid and refined by bisection.
inline std::optional<double> steady_inflection_point(const ConductivityModel& model, double k,
                                                     int samples = 400) {
  const double hs = steady_height(model, k);
  auto curv = [&](double x) { return steady_curvature(model, k, x); };
  // Grid starts one cell in so that a zero of D' sitting exactly on the wall
  // (u_s(0) = 1/k) does not register as an interior sign change.
  double prev_x = hs / samples;
  double prev = curv(prev_x);
  for (int j = 2; j < samples; ++j) {
    const double x = hs * j / samples;
    const double cur = curv(x);
    if (cur == 0.0) continue;  // keep the last signed sample
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      double lo = prev_x, hi = x;
      const bool lo_neg = prev < 0.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((curv(mid) < 0.0) == lo_neg) lo = mid; else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
    prev_x = x;
  }
  return std::nullopt;
}

/// True when D' changes sign somewhere strictly inside (1/k, 1).
inline bool conductivity_has_interior_critical_point(const ConductivityModel& model, double k,
                                                     int samples = 400) {
  require_growth(k);
  const double lo = 1.0 / k;
  const double step = (1.0 - lo) / samples;
  double prev = model.dD(lo + step);
  for (int j = 2; j < samples; ++j) {
    const double cur = model.dD(lo + j * step);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) return true;
    if (cur != 0.0) prev = cur;
  }
  return false;
}

}  // namespace waxfront
