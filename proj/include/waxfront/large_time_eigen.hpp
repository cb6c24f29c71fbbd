#pragma once

// Principal decay rate of the approach to steady state. Perturbations about
// (u_s, h_s) decay like psi(x) exp(-lambda t) where
//
//   psi'' + (eps lambda / Delta(x)) psi = 0,   Delta(x) = D(u_s(x)),
//   psi' = (k / D(1/k)) psi  at x = 0,      psi' = lambda psi  at x = h_s.
//
// The eigenvalue sits in the boundary condition at h_s, so the problem is
// solved by shooting from x = 0 on the residual psi'(h_s) - lambda psi(h_s).

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"
#include "waxfront/quadrature.hpp"
#include "waxfront/steady_state.hpp"

namespace waxfront {

struct EigenOptions {
  double tol_lambda = 1e-9;
  int brackets = 200;
  /// Upper bound on omega * dx for the fastest oscillation in the scan.
  double omega_dx = 0.05;
  int min_steps = 4000;
};

struct EigenPair {
  double lambda0 = 0.0;
  double h_s = 0.0;
  std::vector<double> x;
  std::vector<double> psi0;   ///< normalized so that int psi0^2 / Delta = 1
  std::vector<double> dpsi0;
  std::vector<double> delta;  ///< Delta(x) on the same grid
  double norm_constant = 0.0; ///< factor applied to the psi(0) = 1 shot
};

/// k / (D(1/k) + k h_s), the eps -> 0 limit of the principal eigenvalue.
inline double lambda0_small_eps(const ConductivityModel& model, double k) {
  const double hs = steady_height(model, k);
  return k / (model.D(1.0 / k) + k * hs);
}

/// Delta(x) tabulated on the shooting grid (nodes and midpoints) with a
/// fourth-order Runge-Kutta integrator for the shot itself.
class ShootingProblem {
 public:
  struct Shot {
    double psi = 0.0;
    double dpsi = 0.0;
  };

  ShootingProblem(const ConductivityModel& model, double k, double eps, int steps)
      : k_(k), eps_(eps), steps_(steps + steps % 2) {
    if (!(eps > 0.0)) throw OutOfRange("eigen solve needs eps > 0");
    h_s_ = steady_height(model, k);
    dx_ = h_s_ / steps_;
    const double f_wall = model.F(1.0 / k);
    half_.resize(static_cast<std::size_t>(2 * steps_ + 1));
    for (int j = 0; j <= 2 * steps_; ++j) {
      const double x = 0.5 * dx_ * j;
      const double u = j == 2 * steps_ ? 1.0 : invert_F(model, std::min(x + f_wall, model.F_max()));
      half_[static_cast<std::size_t>(j)] = model.D(u);
    }
    wall_slope_ = k / model.D(1.0 / k);
  }

  double h_s() const noexcept { return h_s_; }
  double dx() const noexcept { return dx_; }
  int steps() const noexcept { return steps_; }
  double wall_slope() const noexcept { return wall_slope_; }
  double delta_at_node(int j) const noexcept { return half_[static_cast<std::size_t>(2 * j)]; }

  /// Integrates from psi(0) = 1, psi'(0) = k / D(1/k). When `path` is given the
  /// node values (psi, psi') are appended to it.
  Shot shoot(double lambda, std::vector<Shot>* path = nullptr) const {
    const double el = eps_ * lambda;
    double y = 1.0;
    double z = wall_slope_;
    if (path) {
      path->clear();
      path->reserve(static_cast<std::size_t>(steps_ + 1));
      path->push_back({y, z});
    }
    for (int j = 0; j < steps_; ++j) {
      const double a0 = el / half_[static_cast<std::size_t>(2 * j)];
      const double am = el / half_[static_cast<std::size_t>(2 * j + 1)];
      const double a1 = el / half_[static_cast<std::size_t>(2 * j + 2)];
      const double k1y = z;
      const double k1z = -a0 * y;
      const double k2y = z + 0.5 * dx_ * k1z;
      const double k2z = -am * (y + 0.5 * dx_ * k1y);
      const double k3y = z + 0.5 * dx_ * k2z;
      const double k3z = -am * (y + 0.5 * dx_ * k2y);
      const double k4y = z + dx_ * k3z;
      const double k4z = -a1 * (y + dx_ * k3y);
      y += dx_ / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      z += dx_ / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
      if (path) path->push_back({y, z});
    }
    return {y, z};
  }

  double residual(double lambda) const {
    const Shot s = shoot(lambda);
    return s.dpsi - lambda * s.psi;
  }

 private:
  double k_;
  double eps_;
  int steps_;
  double h_s_ = 0.0;
  double dx_ = 0.0;
  double wall_slope_ = 0.0;
  std::vector<double> half_;
};

/// Upper end of the eigenvalue scan, 20 lambda0_small_eps max(1, 1/eps).
inline double eigen_scan_limit(const ConductivityModel& model, double k, double eps) {
  return 20.0 * lambda0_small_eps(model, k) * std::max(1.0, 1.0 / eps);
}

/// Smallest positive root of the shooting residual, normalized.
inline EigenPair solve_principal_eigen(const ConductivityModel& model, double k, double eps,
                                       const EigenOptions& opt = {}) {
  require_growth(k);
  if (!(eps > 0.0)) throw OutOfRange("solve_principal_eigen needs eps > 0");
  const double lambda_max = eigen_scan_limit(model, k, eps);
  const double omega_max = std::sqrt(eps * lambda_max / model.d_min());
  const double hs = steady_height(model, k);
  const int steps =
      std::max(opt.min_steps, static_cast<int>(std::ceil(hs * omega_max / opt.omega_dx)));
  const ShootingProblem prob(model, k, eps, steps);

  const double lambda_min = lambda_max * 1e-6;
  double lo = lambda_min;
  double r_lo = prob.residual(lo);
  double hi = 0.0;
  bool found = false;
  for (int j = 1; j <= opt.brackets; ++j) {
    const double cand = lambda_min * std::pow(lambda_max / lambda_min,
                                              static_cast<double>(j) / opt.brackets);
    const double r = prob.residual(cand);
    if ((r_lo > 0.0) != (r > 0.0) || r == 0.0) {
      hi = cand;
      found = true;
      break;
    }
    lo = cand;
    r_lo = r;
  }
  if (!found) {
    throw NoRoot("no sign change of the shooting residual in (0, " + std::to_string(lambda_max) +
                 "]");
  }
  const bool lo_positive = r_lo > 0.0;
  while (hi - lo > opt.tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    const double r = prob.residual(mid);
    if ((r > 0.0) == lo_positive) lo = mid; else hi = mid;
  }

  EigenPair out;
  out.lambda0 = 0.5 * (lo + hi);
  out.h_s = hs;
  std::vector<ShootingProblem::Shot> path;
  prob.shoot(out.lambda0, &path);
  const std::size_t n = path.size();
  out.x.resize(n);
  out.psi0.resize(n);
  out.dpsi0.resize(n);
  out.delta.resize(n);
  std::vector<double> weight(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(path[j].psi > 0.0)) {
      throw NonPositiveEigenfunction("converged eigenfunction changes sign near x = " +
                                     std::to_string(static_cast<double>(j) * prob.dx()) +
                                     "; a higher mode was captured");
    }
    out.x[j] = static_cast<double>(j) * prob.dx();
    out.delta[j] = prob.delta_at_node(static_cast<int>(j));
    weight[j] = path[j].psi * path[j].psi / out.delta[j];
  }
  out.x.back() = hs;
  const double norm = quad::simpson_uniform(weight, prob.dx());
  out.norm_constant = 1.0 / std::sqrt(norm);
  for (std::size_t j = 0; j < n; ++j) {
    out.psi0[j] = path[j].psi * out.norm_constant;
    out.dpsi0[j] = path[j].dpsi * out.norm_constant;
  }
  return out;
}

/// int_0^{h_s} psi^2 / Delta for the stored samples.
inline double eigen_normalization(const EigenPair& pair) {
  std::vector<double> w(pair.psi0.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = pair.psi0[j] * pair.psi0[j] / pair.delta[j];
  return quad::simpson_uniform(w, pair.x[1] - pair.x[0]);
}

/// (k D(1/k)^{-1} psi(0)^2 + int psi'^2) / (psi(h_s)^2 + eps); equals lambda0
/// for a normalized principal pair.
inline double rayleigh_quotient(const EigenPair& pair, const ConductivityModel& model, double k,
                                double eps) {
  std::vector<double> g(pair.dpsi0.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = pair.dpsi0[j] * pair.dpsi0[j];
  const double grad = quad::simpson_uniform(g, pair.x[1] - pair.x[0]);
  const double p0 = pair.psi0.front();
  const double ph = pair.psi0.back();
  return (k / model.D(1.0 / k) * p0 * p0 + grad) / (ph * ph + eps);
}

/// Normalization constant of the eps -> 0 eigenfunction.
inline double small_eps_alpha(const ConductivityModel& model, double k) {
  const double hs = steady_height(model, k);
  const double shift = model.D(1.0 / k) / k;
  const double f_wall = model.F(1.0 / k);
  auto integrand = [&](double s) {
    const double u = invert_F(model, std::min(s + f_wall, model.F_max()));
    return (s + shift) * (s + shift) / model.D(u);
  };
  return 1.0 / std::sqrt(quad::adaptive_simpson(integrand, 0.0, hs, 1e-12));
}

/// alpha (x + D(1/k) / k), the leading eps -> 0 eigenfunction.
inline double psi0_small_eps(const ConductivityModel& model, double k, double x) {
  const double hs = steady_height(model, k);
  if (!(x >= -kSteadyRangeTolerance && x <= hs + kSteadyRangeTolerance)) {
    throw OutOfRange("psi0_small_eps: x outside [0, h_s]");
  }
  return small_eps_alpha(model, k) * (x + model.D(1.0 / k) / k);
}

struct DecayWindow {
  double lo = 1e-4;
  double hi = 1e-2;
};

struct DecayFit {
  double lambda = 0.0;
  /// exp(intercept); estimates u_inf psi0(h_s), which the linear theory
  /// leaves undetermined.
  double amplitude = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of ln(h_ref - h) against t over the samples whose gap
/// lies inside the window.
inline DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> h, double h_ref,
                               DecayWindow window = {}) {
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double gap = h_ref - h[i];
    if (!(gap >= window.lo && gap <= window.hi)) continue;
    const double y = std::log(gap);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
    ++n;
  }
  if (n < 20) {
    throw InsufficientData("decay fit needs at least 20 samples with h_ref - h in [" +
                           std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                           "], found " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sty - st * sy) / (dn * stt - st * st);
  const double intercept = (sy - slope * st) / dn;
  return DecayFit{-slope, std::exp(intercept), n};
}

}  // namespace waxfront
