#pragma once

// Leading-order outer solution for eps -> 0. The temperature is quasi-steady,
// F(u0) linear in x with flux A(t), and the front obeys
//   h0' = G^{-1}(h0) - 1,   h0(0) = 0,   G(A) = (F(1) - F(A / k)) / A.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"
#include "waxfront/steady_state.hpp"

namespace waxfront {

inline constexpr double kInvertGTolerance = 1e-13;
/// Gap h_s - h0 below which the linearized exponential tail takes over.
inline constexpr double kOuterTailGap = 1e-6;

inline double G(const ConductivityModel& model, double k, double lam) {
  if (!(lam > 0.0) || lam > k * (1.0 + 1e-12)) {
    throw OutOfRange("G: lambda = " + std::to_string(lam) + " outside (0, k]");
  }
  lam = std::min(lam, k);
  return (model.F_max() - model.F(lam / k)) / lam;
}

/// A in [1, k] with G(A) = h, for h in [0, h_s].
inline double invert_G(const ConductivityModel& model, double k, double h) {
  require_growth(k);
  const double hs = steady_height(model, k);
  const double tol = 1e-12 * std::max(1.0, hs);
  if (!(h >= -tol && h <= hs + tol)) {
    throw OutOfRange("invert_G: h = " + std::to_string(h) + " outside [0, h_s]");
  }
  h = std::clamp(h, 0.0, hs);
  if (h == 0.0) return k;
  if (h == hs) return 1.0;
  double lo = 1.0;  // G(lo) >= h
  double hi = k;    // G(hi) <= h
  double a = 1.0 + (k - 1.0) * (1.0 - h / hs);
  for (int iter = 0; iter < 200; ++iter) {
    const double g = (model.F_max() - model.F(a / k)) / a;
    const double r = g - h;
    if (std::abs(r) <= kInvertGTolerance) return a;
    if (r > 0.0) lo = a; else hi = a;
    // G'(A) = -(D(A/k) / k + G(A)) / A
    const double dg = -(model.D(a / k) / k + g) / a;
    double next = a - r / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == a || hi - lo <= 4e-16 * k) return next;
    a = next;
  }
  return a;
}

/// k / (k h_s + D(1/k)), the rate at which h0 approaches h_s.
inline double mu(const ConductivityModel& model, double k) {
  require_growth(k);
  return k / (k * steady_height(model, k) + model.D(1.0 / k));
}

struct OuterSolution {
  std::vector<double> t_grid;
  std::vector<double> h0_values;
  std::vector<double> slope_values;  ///< h0' = A - 1 at each grid time
  double k = 0.0;
  double h_s = 0.0;
  double mu = 0.0;
  /// Start of the exponential tail, infinity if it was never entered.
  double t_tail = 0.0;
  ConductivityModel model = ConductivityModel::quadratic(0.0);

  /// Cubic Hermite interpolation of the stored samples; t beyond the grid
  /// follows the tail form h_s - (h_s - h_end) exp(-mu (t - t_end)).
  double h0(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_grid.back()) {
      const double gap = h_s - h0_values.back();
      return h_s - gap * std::exp(-mu * (t - t_grid.back()));
    }
    const auto it = std::upper_bound(t_grid.begin(), t_grid.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - t_grid.begin()) - 1;
    const double t0 = t_grid[j];
    const double dt = t_grid[j + 1] - t0;
    const double s = (t - t0) / dt;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * h0_values[j] + (s3 - 2 * s2 + s) * dt * slope_values[j] +
           (-2 * s3 + 3 * s2) * h0_values[j + 1] + (s3 - s2) * dt * slope_values[j + 1];
  }

  /// A(t) / k, the leading-order wall temperature.
  double wall_temperature(double t) const { return invert_G(model, k, h0(t)) / k; }
};

/// Fourth-order Runge-Kutta with a fixed internal step no larger than
/// min(dt_out, 1e-3 h_s / (k - 1)); samples are stored every dt_out.
inline OuterSolution integrate_h0(const ConductivityModel& model, double k, double t_end,
                                  double dt_out) {
  require_growth(k);
  if (!(t_end > 0.0)) throw InvalidConfig("integrate_h0: t_end must be positive");
  if (!(dt_out > 0.0)) throw InvalidConfig("integrate_h0: dt_out must be positive");
  OuterSolution out;
  out.k = k;
  out.model = model;
  out.h_s = steady_height(model, k);
  out.mu = mu(model, k);
  out.t_tail = std::numeric_limits<double>::infinity();
  const double hs = out.h_s;
  auto rhs = [&](double h) { return invert_G(model, k, std::min(h, hs)) - 1.0; };

  const auto n_out = static_cast<long long>(std::ceil(t_end / dt_out - 1e-9));
  const double h_max = std::min(dt_out, 1e-3 * hs / (k - 1.0));
  const auto sub = static_cast<long long>(std::ceil(dt_out / h_max - 1e-9));
  out.t_grid.reserve(static_cast<std::size_t>(n_out + 1));
  out.h0_values.reserve(static_cast<std::size_t>(n_out + 1));
  out.slope_values.reserve(static_cast<std::size_t>(n_out + 1));
  out.t_grid.push_back(0.0);
  out.h0_values.push_back(0.0);
  out.slope_values.push_back(k - 1.0);

  double h = 0.0;
  double t = 0.0;
  double tail_gap = 0.0;
  for (long long j = 1; j <= n_out; ++j) {
    const double t_next = std::min(t_end, static_cast<double>(j) * dt_out);
    if (std::isfinite(out.t_tail)) {
      h = hs - tail_gap * std::exp(-out.mu * (t_next - out.t_tail));
    } else {
      const double step = (t_next - t) / static_cast<double>(sub);
      for (long long s = 0; s < sub; ++s) {
        const double k1 = rhs(h);
        const double k2 = rhs(h + 0.5 * step * k1);
        const double k3 = rhs(h + 0.5 * step * k2);
        const double k4 = rhs(h + step * k3);
        h += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (hs - h < kOuterTailGap) {
        out.t_tail = t_next;
        tail_gap = hs - h;
      }
    }
    t = t_next;
    out.t_grid.push_back(t);
    out.h0_values.push_back(h);
    out.slope_values.push_back(std::isfinite(out.t_tail) ? out.mu * (hs - h) : rhs(h));
  }
  return out;
}

/// F^{-1}(A x + F(A / k)) with A = G^{-1}(h0), for x in [0, h0].
inline double u0_profile(const ConductivityModel& model, double k, double h0, double x) {
  const double a = invert_G(model, k, h0);
  const double tol = 1e-12 * std::max(1.0, h0);
  if (!(x >= -tol && x <= h0 + tol)) {
    throw OutOfRange("u0_profile: x = " + std::to_string(x) + " outside [0, h0]");
  }
  x = std::clamp(x, 0.0, h0);
  if (x == h0) return 1.0;
  return invert_F(model, a * x + model.F(a / k));
}

}  // namespace waxfront
