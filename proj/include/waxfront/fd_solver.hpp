#pragma once

// Explicit finite differences for the front-fixed problem. With X = x / h(t)
// the layer maps to [0, 1] and the unknowns are v(X, t) = u(x, t) and h(t):
//
//   eps h^2 v_t = D(v) v_XX + eps X h h_t v_X + D'(v) v_X^2,   0 < X < 1,
//   D(v) v_X = k v h  at X = 0,   v = 1 and h h_t = v_X - h  at X = 1.
//
// Time stepping starts at t = delta from the small-time expansion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waxfront/conductivity.hpp"
#include "waxfront/errors.hpp"
#include "waxfront/small_time.hpp"
#include "waxfront/steady_state.hpp"

namespace waxfront {

inline constexpr double kDefaultDelta = 1e-3;
inline constexpr double kBlowUpBound = 10.0;

struct SolverConfig {
  double eps = 0.1;
  double k = 2.0;
  ConductivityModel model = ConductivityModel::quadratic(0.0);
  int n_x = 161;
  /// Initialization time; unset means min(1e-3, small-time horizon / 10).
  std::optional<double> delta;
  double t_end = 20.0;
  double safety = 0.4;
  double steady_tol = 0.01;
  /// Time between rows of the (t, h, dt) series.
  double output_stride = 0.01;
  /// Time between full profile snapshots (early snapshots are also taken at
  /// delta * 2^m).
  double snapshot_interval = 1.0;
  /// Times at which h is recorded by linear interpolation between steps.
  std::vector<double> probe_times;
};

inline double small_time_delta_limit(const SolverConfig& cfg) {
  return make_small_time(cfg.model, cfg.eps, cfg.k).validity_horizon() / 10.0;
}

inline void validate(const SolverConfig& cfg) {
  if (!(cfg.k > 1.0)) {
    throw InvalidConfig("k = " + std::to_string(cfg.k) +
                        ": a wax layer requires k > 1 (cooling must beat the oil heat flux)");
  }
  if (!(cfg.eps > 0.0) || !std::isfinite(cfg.eps)) throw InvalidConfig("eps must be positive");
  if (cfg.n_x < 3) throw InvalidConfig("n_x must be at least 3");
  if (!(cfg.safety > 0.0 && cfg.safety < 1.0)) throw InvalidConfig("safety must lie in (0, 1)");
  if (!(cfg.t_end > 0.0)) throw InvalidConfig("t_end must be positive");
  if (!(cfg.steady_tol > 0.0)) throw InvalidConfig("steady_tol must be positive");
  if (!(cfg.output_stride > 0.0)) throw InvalidConfig("output_stride must be positive");
  if (!(cfg.snapshot_interval > 0.0)) throw InvalidConfig("snapshot_interval must be positive");
  if (cfg.delta) {
    const double limit = small_time_delta_limit(cfg);
    if (!(*cfg.delta > 0.0)) throw InvalidConfig("delta must be positive");
    if (*cfg.delta > limit * (1.0 + 1e-12)) {
      throw InvalidConfig("delta = " + std::to_string(*cfg.delta) +
                          " exceeds a tenth of the small-time validity horizon (" +
                          std::to_string(limit) + ")");
    }
  }
}

inline double resolved_delta(const SolverConfig& cfg) {
  return cfg.delta ? *cfg.delta : std::min(kDefaultDelta, small_time_delta_limit(cfg));
}

struct SolverState {
  std::vector<double> v;  ///< grid values on X_i = i / (n_x - 1)
  double h = 0.0;
  double t = 0.0;
  double dt = 0.0;  ///< last accepted step
  long long clamp_count = 0;
  long long step_count = 0;
};

/// Thrown when the explicit update leaves its stability region.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, SolverState last_valid)
      : Error(what), last_valid_(std::move(last_valid)) {}
  const SolverState& last_valid() const noexcept { return last_valid_; }

 private:
  SolverState last_valid_;
};

/// Small-time starting profile at t = delta.
inline SolverState initialize(const SolverConfig& cfg) {
  validate(cfg);
  const auto coeffs = make_small_time(cfg.model, cfg.eps, cfg.k);
  const double delta = resolved_delta(cfg);
  const double k = cfg.k;
  const double h = h_series(coeffs, delta);
  // v ~ 1 + k h (X - 1) + (h^2 / 2) u_xx(0+) (X - 1)^2
  const double uxx = initial_slope_limits(coeffs).second;
  SolverState s;
  s.h = h;
  s.t = delta;
  s.v.resize(static_cast<std::size_t>(cfg.n_x));
  const double dX = 1.0 / (cfg.n_x - 1);
  for (int i = 0; i < cfg.n_x; ++i) {
    const double xm1 = i * dX - 1.0;
    s.v[static_cast<std::size_t>(i)] = 1.0 + k * h * xm1 + 0.5 * h * h * uxx * xm1 * xm1;
  }
  s.v.back() = 1.0;
  return s;
}

/// Stable step from the three explicit constraints (diffusion, nonlinear
/// gradient term, front advection), scaled by the safety factor.
inline double stable_dt(double h, double dX, double eps, double k, double sup_D, double sup_dD,
                        double safety) {
  if (!(h > 0.0)) throw DegenerateFront("stable_dt: front height must be positive");
  const double hdx2 = (h * dX) * (h * dX);
  double dt = hdx2 * eps / (2.0 * sup_D);
  if (sup_dD > 0.0) dt = std::min(dt, 2.0 * hdx2 * eps / sup_dD);
  dt = std::min(dt, h * dX / std::abs(k - 1.0));
  return safety * dt;
}

inline double stable_dt(const SolverState& s, const SolverConfig& cfg) {
  const double lo = 1.0 / cfg.k;
  return stable_dt(s.h, 1.0 / (cfg.n_x - 1), cfg.eps, cfg.k, cfg.model.sup_D(lo),
                   cfg.model.sup_dD(lo), cfg.safety);
}

namespace detail {

/// One explicit update from `v` into `w` with the model's D evaluated inline.
/// Returns the new front height. With Clamp = false every v_i must already lie
/// in [0, 1]; `outside_unit` reports whether some w_i does not.
template <bool Clamp, class Model>
inline double fd_update(const Model& m, const double* __restrict v, double* __restrict w,
                        const double* __restrict X, int n, double h, double dt, double dX,
                        double eps, double k, bool& outside_unit) {
  const double inv_dx = 1.0 / dX;
  const double inv_h = 1.0 / h;
  // front: h_{j+1} = h_j + dt ((v_N - v_{N-1}) / (dX h_j) - 1)
  const double speed = (1.0 - v[n - 2]) * inv_dx * inv_h - 1.0;
  const double hn = h + dt * speed;
  // interior: dt / (eps h^2) * (D v_XX + eps X h h_t v_X + D' v_X^2)
  const double coef = dt * inv_h * inv_h / eps;
  const double c_lap = coef * inv_dx * inv_dx;
  const double c_adv = dt * speed * inv_h * 0.5 * inv_dx;
  const double c_grad = 0.25 * c_lap;
  int outside = 0;
  for (int i = 1; i < n - 1; ++i) {
    const double vi = v[i];
    const double diff = v[i + 1] - v[i - 1];
    const double lap = v[i - 1] - 2.0 * vi + v[i + 1];
    double ve = vi;
    if constexpr (Clamp) ve = std::min(std::max(vi, 0.0), 1.0);
    const double wi = vi + c_lap * m.D(ve) * lap + diff * (c_adv * X[i] + c_grad * m.dD(ve) * diff);
    w[i] = wi;
    outside |= static_cast<int>(!(wi >= 0.0)) | static_cast<int>(wi > 1.0);
  }
  w[n - 1] = 1.0;
  // wall: v_1 = v_2 - k dX h_{j+1} v_2 / D(v_2) at the new level
  const double w1 = std::min(std::max(w[1], 0.0), 1.0);
  w[0] = w[1] - k * dX * hn * w[1] / m.D(w1);
  outside |= static_cast<int>(!(w[0] >= 0.0)) | static_cast<int>(w[0] > 1.0);
  outside_unit = outside != 0;
  return hn;
}

/// Slow path after an update left [0, 1]: counts the values the next update
/// will clamp and reports whether the grid is still bounded.
inline bool audit_update(const std::vector<double>& w, long long& clamps) {
  bool bounded = true;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double x = w[i];
    if (!(std::abs(x) <= kBlowUpBound)) bounded = false;
    if (x < 0.0 || x > 1.0) ++clamps;
  }
  return bounded;
}

}  // namespace detail

/// Stateful stepper; holds the grid and scratch buffers so that stepping does
/// not allocate.
class Solver {
 public:
  explicit Solver(SolverConfig cfg) : cfg_(std::move(cfg)), state_(initialize(cfg_)) {
    const auto n = static_cast<std::size_t>(cfg_.n_x);
    dX_ = 1.0 / (cfg_.n_x - 1);
    X_.resize(n);
    for (std::size_t i = 0; i < n; ++i) X_[i] = static_cast<double>(i) * dX_;
    scratch_.assign(n, 0.0);
    sup_D_ = cfg_.model.sup_D(1.0 / cfg_.k);
    sup_dD_ = cfg_.model.sup_dD(1.0 / cfg_.k);
    double diffusion = cfg_.eps / (2.0 * sup_D_);
    if (sup_dD_ > 0.0) diffusion = std::min(diffusion, 2.0 * cfg_.eps / sup_dD_);
    dt_diffusion_ = cfg_.safety * diffusion;
    dt_front_ = cfg_.safety / std::abs(cfg_.k - 1.0);
    for (double x : state_.v) needs_clamp_ = needs_clamp_ || x < 0.0 || x > 1.0;
    if (needs_clamp_) detail::audit_update(state_.v, state_.clamp_count);
  }

  const SolverConfig& config() const noexcept { return cfg_; }
  const SolverState& state() const noexcept { return state_; }
  double dX() const noexcept { return dX_; }

  /// stable_dt() with the per-run constants folded in (equal up to rounding).
  double next_dt() const {
    const double hdx = state_.h * dX_;
    return std::min(hdx * hdx * dt_diffusion_, hdx * dt_front_);
  }

  /// Advances one step of size dt in the order: front, interior, wall.
  void step(double dt) {
    if (!(state_.h > 0.0)) throw DegenerateFront("step: front height must be positive");
    state_.v.back() = 1.0;
    bool outside = false;
    const int n = cfg_.n_x;
    const double hn = cfg_.model.visit([&](const auto& m) {
      if (needs_clamp_) {
        return detail::fd_update<true>(m, state_.v.data(), scratch_.data(), X_.data(), n,
                                       state_.h, dt, dX_, cfg_.eps, cfg_.k, outside);
      }
      return detail::fd_update<false>(m, state_.v.data(), scratch_.data(), X_.data(), n, state_.h,
                                      dt, dX_, cfg_.eps, cfg_.k, outside);
    });
    needs_clamp_ = outside;
    const bool bounded = !outside || detail::audit_update(scratch_, state_.clamp_count);
    if (!std::isfinite(hn) || !bounded) [[unlikely]] {
      throw BlowUp("explicit update became unstable at t = " + std::to_string(state_.t) +
                       " (dt = " + std::to_string(dt) + ")",
                   state_);
    }
    state_.v.swap(scratch_);
    state_.h = hn;
    state_.t += dt;
    state_.dt = dt;
    ++state_.step_count;
  }

  void step() { step(next_dt()); }

  /// Pins the clock, used to land exactly on t_end after rounding.
  void set_time(double t) noexcept { state_.t = t; }

 private:
  SolverConfig cfg_;
  SolverState state_;
  std::vector<double> X_;
  std::vector<double> scratch_;
  double dX_ = 0.0;
  double sup_D_ = 1.0;
  double sup_dD_ = 0.0;
  double dt_diffusion_ = 0.0;
  double dt_front_ = 0.0;
  bool needs_clamp_ = false;
};

/// Value-semantic single step using the stable step size.
inline SolverState step(const SolverState& s, const SolverConfig& cfg) {
  const double dt = stable_dt(s, cfg);
  SolverState out = s;
  const int n = cfg.n_x;
  const double dX = 1.0 / (n - 1);
  std::vector<double> X(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) X[static_cast<std::size_t>(i)] = i * dX;
  std::vector<double> v = s.v;
  v.back() = 1.0;
  bool outside = false;
  const double hn = cfg.model.visit([&](const auto& m) {
    return detail::fd_update<true>(m, v.data(), out.v.data(), X.data(), n, s.h, dt, dX, cfg.eps, cfg.k,
                             outside);
  });
  const bool bounded = !outside || detail::audit_update(out.v, out.clamp_count);
  if (!std::isfinite(hn) || !bounded) {
    throw BlowUp("explicit update became unstable at t = " + std::to_string(s.t), s);
  }
  out.h = hn;
  out.t = s.t + dt;
  out.dt = dt;
  ++out.step_count;
  return out;
}

struct SeriesRow {
  double t = 0.0;
  double h = 0.0;
  double dt = 0.0;
};

struct Snapshot {
  double t = 0.0;
  double h = 0.0;
  std::vector<double> v;  ///< values on the fixed X grid
};

struct PhysicalProfile {
  std::vector<double> x;
  std::vector<double> u;
};

/// Maps a snapshot back to x = X h; u(h, t) = 1 holds by construction.
inline PhysicalProfile to_physical(const Snapshot& snap) {
  PhysicalProfile p;
  const std::size_t n = snap.v.size();
  p.x.resize(n);
  p.u = snap.v;
  for (std::size_t i = 0; i < n; ++i) p.x[i] = snap.h * static_cast<double>(i) / (n - 1);
  p.x.back() = snap.h;
  p.u.back() = 1.0;
  return p;
}

struct RunRecord {
  SolverConfig config;
  double delta = 0.0;
  double h_s = 0.0;
  std::vector<SeriesRow> series;
  std::vector<Snapshot> snapshots;
  std::vector<std::pair<double, double>> probes;  ///< (t, h) at requested times
  SolverState final_state;
  bool converged = false;
  double t_converged = 0.0;
  double steady_error = 0.0;   ///< |h - h_s| at the final state
  double profile_error = 0.0;  ///< max_i |v_i - u_s(X_i h_s)| at the final state
  double min_front_speed = 0.0;  ///< min over steps of (h_{j+1} - h_j) / dt
  double max_front_speed = 0.0;
  double wall_time_s = 0.0;
};

/// Steady profile sampled on the fixed grid, v_s(X) = u_s(X h_s).
inline std::vector<double> steady_profile_on_grid(const ConductivityModel& model, double k,
                                                  int n_x) {
  const double hs = steady_height(model, k);
  std::vector<double> out(static_cast<std::size_t>(n_x));
  for (int i = 0; i < n_x; ++i) {
    out[static_cast<std::size_t>(i)] = steady_profile(model, k, hs * i / (n_x - 1));
  }
  out.back() = 1.0;
  return out;
}

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct DiscreteSteadyState {
  double h = 0.0;
  std::vector<double> v;
};

namespace detail {

/// Marches the steady scheme from the front (v_N = 1, v_{N-1} = 1 - dX h)
/// toward the wall and returns the mismatch with the discrete Robin condition.
/// NaN when the interior quadratic has no real root.
inline double discrete_steady_residual(const ConductivityModel& model, double k, int n_x, double h,
                                       std::vector<double>& v) {
  const double dX = 1.0 / (n_x - 1);
  const auto n = static_cast<std::size_t>(n_x);
  v.assign(n, 0.0);
  v[n - 1] = 1.0;
  v[n - 2] = 1.0 - dX * h;
  for (std::size_t i = n - 2; i >= 1; --i) {
    const double u = std::clamp(v[i], 0.0, 1.0);
    const double d = model.D(u);
    const double dd = model.dD(u);
    const double a = v[i + 1] - v[i];
    // D (a - s) + D'/4 (a + s)^2 = 0 for s = v_i - v_{i-1}
    const double A = 0.25 * dd;
    const double B = 0.5 * dd * a - d;
    const double C = d * a + 0.25 * dd * a * a;
    const double disc = B * B - 4.0 * A * C;
    if (!(disc >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double s = 2.0 * C / (-B + std::sqrt(disc));
    v[i - 1] = v[i] - s;
  }
  const double w1 = std::clamp(v[1], 0.0, 1.0);
  return v[0] - (v[1] - k * dX * h * v[1] / model.D(w1));
}

}  // namespace detail

/// Fixed point of the explicit scheme on an n_x grid. It differs from
/// (h_s, u_s) by O(dX) because of the one-sided front and wall differences.
inline DiscreteSteadyState discrete_steady_state(const ConductivityModel& model, double k, int n_x) {
  require_growth(k);
  if (n_x < 3) throw InvalidConfig("n_x must be at least 3");
  const double hs = steady_height(model, k);
  std::vector<double> v;
  auto r = [&](double h) { return detail::discrete_steady_residual(model, k, n_x, h, v); };
  constexpr int kScan = 80;
  double lo = 0.5 * hs;
  double r_lo = r(lo);
  double hi = lo;
  bool found = false;
  for (int j = 1; j <= kScan; ++j) {
    const double cand = hs * (0.5 + static_cast<double>(j) / kScan);
    const double rc = r(cand);
    if (std::isfinite(r_lo) && std::isfinite(rc) && (r_lo > 0.0) != (rc > 0.0)) {
      hi = cand;
      found = true;
      break;
    }
    lo = cand;
    r_lo = rc;
  }
  if (!found) throw NoRoot("discrete steady state not bracketed in [h_s/2, 3h_s/2]");
  const bool lo_pos = r_lo > 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hs; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double rm = r(mid);
    if ((rm > 0.0) == lo_pos) lo = mid; else hi = mid;
  }
  DiscreteSteadyState out;
  out.h = 0.5 * (lo + hi);
  r(out.h);
  out.v = v;
  return out;
}

/// Integrates until t_end or until both the front and the profile lie within
/// steady_tol of the steady state.
inline RunRecord run(const SolverConfig& cfg) {
  const auto wall_start = std::chrono::steady_clock::now();
  Solver solver(cfg);
  RunRecord rec;
  rec.config = cfg;
  rec.delta = resolved_delta(cfg);
  rec.h_s = steady_height(cfg.model, cfg.k);
  const auto vs = steady_profile_on_grid(cfg.model, cfg.k, cfg.n_x);

  std::vector<double> probes = cfg.probe_times;
  std::sort(probes.begin(), probes.end());
  std::size_t next_probe = 0;
  while (next_probe < probes.size() && probes[next_probe] < rec.delta) ++next_probe;

  auto take_snapshot = [&](const SolverState& s) {
    rec.snapshots.push_back(Snapshot{s.t, s.h, s.v});
  };
  auto steady_reached = [&](const SolverState& s) {
    return std::abs(s.h - rec.h_s) < cfg.steady_tol && max_abs_difference(s.v, vs) < cfg.steady_tol;
  };

  const SolverState& s = solver.state();
  rec.series.push_back(SeriesRow{s.t, s.h, 0.0});
  take_snapshot(s);
  double next_series = s.t + cfg.output_stride;
  double next_early_snap = 2.0 * rec.delta;
  long long next_interval_snap = 1;
  rec.min_front_speed = std::numeric_limits<double>::infinity();
  rec.max_front_speed = -std::numeric_limits<double>::infinity();

  while (s.t < cfg.t_end) {
    double dt = solver.next_dt();
    const bool last = s.t + dt >= cfg.t_end;
    if (last) dt = cfg.t_end - s.t;
    const double t_prev = s.t;
    const double h_prev = s.h;
    solver.step(dt);
    if (last) solver.set_time(cfg.t_end);
    const double speed = (s.h - h_prev) / dt;
    rec.min_front_speed = std::min(rec.min_front_speed, speed);
    rec.max_front_speed = std::max(rec.max_front_speed, speed);
    while (next_probe < probes.size() && probes[next_probe] <= s.t) {
      const double w = (probes[next_probe] - t_prev) / (s.t - t_prev);
      rec.probes.emplace_back(probes[next_probe], h_prev + w * (s.h - h_prev));
      ++next_probe;
    }
    bool snap = false;
    if (s.t >= next_early_snap && next_early_snap < cfg.snapshot_interval) {
      snap = true;
      while (next_early_snap <= s.t) next_early_snap *= 2.0;
    }
    if (s.t >= next_interval_snap * cfg.snapshot_interval) {
      snap = true;
      while (next_interval_snap * cfg.snapshot_interval <= s.t) ++next_interval_snap;
    }
    if (snap) take_snapshot(s);
    if (s.t >= next_series || last) {
      rec.series.push_back(SeriesRow{s.t, s.h, dt});
      while (next_series <= s.t) next_series += cfg.output_stride;
      if (steady_reached(s)) {
        rec.converged = true;
        rec.t_converged = s.t;
        break;
      }
    }
  }
  if (rec.snapshots.back().t != s.t) take_snapshot(s);
  if (rec.series.back().t != s.t) rec.series.push_back(SeriesRow{s.t, s.h, s.dt});
  rec.final_state = s;
  rec.steady_error = std::abs(s.h - rec.h_s);
  rec.profile_error = max_abs_difference(s.v, vs);
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return rec;
}

}  // namespace waxfront
