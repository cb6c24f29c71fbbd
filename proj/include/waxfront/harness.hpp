#pragma once

// Parameter sweeps over (c, k, eps) and the cross-checks applied to every run:
// pointwise solution bounds, agreement with the steady state, the small-time
// series, the principal decay rate and the eps -> 0 outer solution.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "waxfront/config.hpp"
#include "waxfront/eps_asymptotics.hpp"
#include "waxfront/errors.hpp"
#include "waxfront/fd_solver.hpp"
#include "waxfront/io.hpp"
#include "waxfront/large_time_eigen.hpp"
#include "waxfront/small_time.hpp"
#include "waxfront/steady_state.hpp"

namespace waxfront {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
/// Gap to h_s that defines the time to steady state.
inline constexpr double kSteadyGap = 0.01;

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SweepSpec {
  std::vector<double> c_values{-3, -2, -1, 0, 1, 2, 3};
  std::vector<double> k_values{2, 10, 20};
  std::vector<double> eps_values{0.1, 0.5, 1};
  /// Settings shared by every run; c, k and eps are overwritten per run.
  SolverConfig base;

  std::size_t size() const { return c_values.size() * k_values.size() * eps_values.size(); }
};

inline void validate(const SweepSpec& spec) {
  if (spec.c_values.empty() || spec.k_values.empty() || spec.eps_values.empty()) {
    throw InvalidConfig("sweep needs at least one value of c, k and eps");
  }
  for (double c : spec.c_values) (void)QuadraticConductivity(c);
  for (double k : spec.k_values) {
    if (!(k > 1.0)) throw InvalidConfig("sweep k = " + std::to_string(k) + " must exceed 1");
  }
  for (double e : spec.eps_values) {
    if (!(e > 0.0)) throw InvalidConfig("sweep eps must be positive");
  }
}

/// Probe times j delta and j delta / 2 used by the small-time comparison.
inline constexpr int kSmallTimeFirst = 3;
inline constexpr int kSmallTimeLast = 10;

inline std::vector<double> small_time_probes(double delta) {
  std::vector<double> p;
  for (int j = kSmallTimeFirst; j <= kSmallTimeLast; ++j) {
    p.push_back(j * delta);
    p.push_back(0.5 * j * delta);
  }
  return p;
}

inline SolverConfig sweep_run_config(const SweepSpec& spec, double c, double k, double eps) {
  SolverConfig cfg = spec.base;
  cfg.model = ConductivityModel::quadratic(c);
  cfg.k = k;
  cfg.eps = eps;
  const auto extra = small_time_probes(resolved_delta(cfg));
  cfg.probe_times.insert(cfg.probe_times.end(), extra.begin(), extra.end());
  return cfg;
}

namespace detail {

inline double interp_grid(const std::vector<double>& v, double X) {
  const std::size_t n = v.size();
  const double s = std::clamp(X, 0.0, 1.0) * static_cast<double>(n - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(s), n - 2);
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

/// D(v) v_x at the cell midpoints of a snapshot.
inline std::vector<double> discrete_flux(const ConductivityModel& model, const Snapshot& s) {
  const std::size_t n = s.v.size();
  const double dx = s.h / static_cast<double>(n - 1);
  std::vector<double> q(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = std::clamp(0.5 * (s.v[i] + s.v[i + 1]), 0.0, 1.0);
    q[i] = model.D(mid) * (s.v[i + 1] - s.v[i]) / dx;
  }
  return q;
}

inline Check make_check(std::string name, bool ok, double measured, double tol,
                        std::string detail = {}) {
  return Check{std::move(name), ok, measured, tol, std::move(detail)};
}

}  // namespace detail

/// Bounds that every solution satisfies, evaluated on every snapshot with the
/// discretization allowance eta = 2 dX:
///   (i)   1/k - eta <= v <= 1 + eta
///   (ii)  u non-increasing in t at fixed x
///   (iii) 1 - eta <= D(u) u_x <= k + eta
///   (iv)  (D(u) u_x)_x <= eta
///   (v)   0 < h < h_s + eta and 0 <= h_t < k - 1 + eta at every step
inline std::vector<Check> bound_checks(const RunRecord& rec) {
  const SolverConfig& cfg = rec.config;
  const double k = cfg.k;
  const double eta = 2.0 / (cfg.n_x - 1);
  std::vector<Check> out;

  double worst_low = std::numeric_limits<double>::infinity();
  double worst_high = -std::numeric_limits<double>::infinity();
  double worst_rise = -std::numeric_limits<double>::infinity();
  double flux_min = std::numeric_limits<double>::infinity();
  double flux_max = -std::numeric_limits<double>::infinity();
  double flux_slope = -std::numeric_limits<double>::infinity();
  double h_min = std::numeric_limits<double>::infinity();
  double h_max = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
    const Snapshot& snap = rec.snapshots[s];
    for (double v : snap.v) {
      worst_low = std::min(worst_low, v);
      worst_high = std::max(worst_high, v);
    }
    const auto q = detail::discrete_flux(cfg.model, snap);
    for (std::size_t i = 0; i < q.size(); ++i) {
      flux_min = std::min(flux_min, q[i]);
      flux_max = std::max(flux_max, q[i]);
      if (i) flux_slope = std::max(flux_slope, q[i] - q[i - 1]);
    }
    h_min = std::min(h_min, snap.h);
    h_max = std::max(h_max, snap.h);
    if (s) {
      const Snapshot& prev = rec.snapshots[s - 1];
      const std::size_t n = snap.v.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double x = snap.h * static_cast<double>(i) / static_cast<double>(n - 1);
        if (x > prev.h) break;
        const double before = detail::interp_grid(prev.v, x / prev.h);
        worst_rise = std::max(worst_rise, snap.v[i] - before);
      }
    }
  }
  out.push_back(detail::make_check("bounds_lower", worst_low >= 1.0 / k - eta, worst_low,
                                   1.0 / k - eta, "min v >= 1/k - eta"));
  out.push_back(detail::make_check("bounds_upper", worst_high <= 1.0 + eta, worst_high,
                                   1.0 + eta, "max v <= 1 + eta"));
  out.push_back(detail::make_check("u_nonincreasing_in_t", !(worst_rise > eta), worst_rise, eta,
                                   "max rise of u at fixed x between snapshots"));
  out.push_back(detail::make_check("flux_lower", flux_min >= 1.0 - eta, flux_min, 1.0 - eta,
                                   "min D(u) u_x"));
  out.push_back(detail::make_check("flux_upper", flux_max <= k + eta, flux_max, k + eta,
                                   "max D(u) u_x"));
  out.push_back(detail::make_check("flux_nonincreasing_in_x", !(flux_slope > eta), flux_slope, eta,
                                   "max increase of D(u) u_x between neighbouring cells"));
  out.push_back(detail::make_check("h_positive", h_min > 0.0, h_min, 0.0, "min h"));
  out.push_back(detail::make_check("h_below_steady", h_max < rec.h_s + eta, h_max, rec.h_s + eta,
                                   "max h < h_s + eta"));
  out.push_back(detail::make_check("front_monotone", rec.min_front_speed >= 0.0,
                                   rec.min_front_speed, 0.0, "min step h_t >= 0"));
  out.push_back(detail::make_check("front_speed_bound", rec.max_front_speed < k - 1.0 + eta,
                                   rec.max_front_speed, k - 1.0 + eta, "max step h_t < k - 1 + eta"));
  return out;
}

struct ReconcileRow {
  double steady_gap = kNaN;
  double profile_gap = kNaN;
  double t_steady = kNaN;
  /// min over j of log2 |h - h_series|(t) / |h - h_series|(t / 2), t = j delta
  double small_time_exponent = kNaN;
  double lambda_fit = kNaN;
  double lambda_eigen = kNaN;
  double lambda_ratio = kNaN;
  /// sup_t |h - h0|, only for eps <= 0.1
  double outer_gap = kNaN;
  std::vector<std::string> notes;
};

/// First t with h_s - h < gap, interpolated linearly between series rows.
inline double time_to_steady(const RunRecord& rec, double gap = kSteadyGap) {
  const auto& s = rec.series;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double g = rec.h_s - s[i].h;
    if (g < gap) {
      if (i == 0) return s[0].t;
      const double g0 = rec.h_s - s[i - 1].h;
      const double w = (g0 - gap) / (g0 - g);
      return s[i - 1].t + w * (s[i].t - s[i - 1].t);
    }
  }
  return kNaN;
}

/// log2 ratio of series discrepancies at j delta and j delta / 2; NaN where a
/// probe is missing.
inline std::vector<std::pair<double, double>> small_time_exponents(const RunRecord& rec) {
  const auto coeffs = make_small_time(rec.config.model, rec.config.eps, rec.config.k);
  auto probe = [&](double t) {
    for (const auto& [pt, h] : rec.probes) {
      if (std::abs(pt - t) <= 1e-14 * t) return h;
    }
    return kNaN;
  };
  std::vector<std::pair<double, double>> out;
  for (int j = kSmallTimeFirst; j <= kSmallTimeLast; ++j) {
    const double t = j * rec.delta;
    const double g1 = probe(t) - h_series(coeffs, t);
    const double g2 = probe(0.5 * t) - h_series(coeffs, 0.5 * t);
    out.emplace_back(t, std::log2(std::abs(g1) / std::abs(g2)));
  }
  return out;
}

inline ReconcileRow reconcile(const RunRecord& rec, const SolverConfig& cfg) {
  ReconcileRow row;
  row.steady_gap = rec.steady_error;
  row.profile_gap = rec.profile_error;
  row.t_steady = time_to_steady(rec);

  const auto exps = small_time_exponents(rec);
  double worst = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& [t, e] : exps) {
    if (std::isnan(e)) continue;
    worst = std::min(worst, e);
    any = true;
  }
  if (any) row.small_time_exponent = worst;
  else row.notes.push_back("small-time probes not recorded");

  try {
    row.lambda_eigen = solve_principal_eigen(cfg.model, cfg.k, cfg.eps).lambda0;
  } catch (const Error& e) {
    row.notes.push_back(std::string("eigen: ") + e.what());
  }
  try {
    const double h_ref = discrete_steady_state(cfg.model, cfg.k, cfg.n_x).h;
    std::vector<double> t, h;
    for (const auto& r : rec.series) {
      t.push_back(r.t);
      h.push_back(r.h);
    }
    row.lambda_fit = fit_decay_rate(t, h, h_ref).lambda;
    row.lambda_ratio = row.lambda_fit / row.lambda_eigen;
  } catch (const Error& e) {
    row.notes.push_back(std::string("decay fit: ") + e.what());
  }

  if (cfg.eps <= 0.1 + 1e-12) {
    const double t_last = rec.series.back().t;
    const auto outer = integrate_h0(cfg.model, cfg.k, t_last, cfg.output_stride);
    double g = 0.0;
    for (const auto& r : rec.series) g = std::max(g, std::abs(r.h - outer.h0(r.t)));
    row.outer_gap = g;
  } else {
    row.notes.push_back("outer comparison only for eps <= 0.1");
  }
  return row;
}

struct RunOutcome {
  double c = 0.0;
  double k = 0.0;
  double eps = 0.0;
  bool completed = false;
  std::string error;
  RunRecord record;
  std::vector<Check> checks;
  ReconcileRow row;
  bool passed = false;
};

/// Converged within steady_tol by t_end, plus every pointwise bound.
inline bool outcome_passed(const RunOutcome& o) {
  if (!o.completed) return false;
  if (!o.record.converged) return false;
  return std::all_of(o.checks.begin(), o.checks.end(), [](const Check& c) { return c.passed; });
}

struct ValidationReport {
  std::vector<RunOutcome> runs;
  std::vector<Check> trends;
  std::string trend_error;
  bool passed = false;
  double wall_time_s = 0.0;
  unsigned jobs = 1;
};

/// (a, c) h at the end of a run increases with k at fixed (c, eps);
/// (b) time to steady state increases with eps at fixed (c, k).
inline std::vector<Check> trend_checks(const std::vector<RunOutcome>& runs) {
  std::vector<const RunOutcome*> done;
  for (const auto& r : runs) {
    if (r.completed) done.push_back(&r);
  }
  auto key_label = [](const char* a, double x, const char* b, double y) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%g,%s=%g", a, x, b, y);
    return std::string(buf);
  };
  std::vector<Check> out;
  bool have_k_pair = false;
  bool have_eps_pair = false;
  for (const auto* a : done) {
    for (const auto* b : done) {
      if (a->c != b->c) continue;
      if (a->eps == b->eps && a->k < b->k) {
        // only neighbouring k values
        bool between = false;
        for (const auto* m : done) {
          if (m->c == a->c && m->eps == a->eps && m->k > a->k && m->k < b->k) between = true;
        }
        if (between) continue;
        have_k_pair = true;
        const double ha = a->record.final_state.h;
        const double hb = b->record.final_state.h;
        out.push_back(detail::make_check(
            "h_final_increases_with_k(" + key_label("c", a->c, "eps", a->eps) + ",k=" +
                io::fmt(a->k) + "->" + io::fmt(b->k) + ")",
            hb > ha, hb - ha, 0.0, "h_final(k_hi) - h_final(k_lo) > 0"));
      }
      if (a->k == b->k && a->eps < b->eps) {
        bool between = false;
        for (const auto* m : done) {
          if (m->c == a->c && m->k == a->k && m->eps > a->eps && m->eps < b->eps) between = true;
        }
        if (between) continue;
        have_eps_pair = true;
        const double ta = a->row.t_steady;
        const double tb = b->row.t_steady;
        out.push_back(detail::make_check(
            "t_steady_increases_with_eps(" + key_label("c", a->c, "k", a->k) + ",eps=" +
                io::fmt(a->eps) + "->" + io::fmt(b->eps) + ")",
            tb > ta, tb - ta, 0.0, "t_steady(eps_hi) - t_steady(eps_lo) > 0"));
      }
    }
  }
  if (!have_k_pair || !have_eps_pair) {
    throw InsufficientCoverage(
        "trend checks need two k values at some fixed (c, eps) and two eps values at some "
        "fixed (c, k)");
  }
  return out;
}

inline RunOutcome evaluate_run(double c, double k, double eps, const SolverConfig& cfg) {
  RunOutcome o;
  o.c = c;
  o.k = k;
  o.eps = eps;
  try {
    o.record = run(cfg);
    o.completed = true;
    o.checks = bound_checks(o.record);
    o.row = reconcile(o.record, cfg);
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  o.passed = outcome_passed(o);
  return o;
}

/// Runs every (c, k, eps) combination on `jobs` worker threads. Runs are
/// independent so the results do not depend on the thread count. A failing
/// run is recorded and never stops the sweep.
inline ValidationReport run_sweep(const SweepSpec& spec, unsigned jobs,
                                  const std::function<void(const RunOutcome&)>& on_done = {}) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  struct Task {
    double c, k, eps, cost;
  };
  std::vector<Task> tasks;
  for (double c : spec.c_values) {
    for (double k : spec.k_values) {
      for (double e : spec.eps_values) {
        SolverConfig cfg = spec.base;
        cfg.k = k;
        cfg.eps = e;
        cfg.model = ConductivityModel::quadratic(c);
        // steps are dominated by the early phase, ~ n_x^2 / (eps (k-1)^2 delta)
        const double cost = static_cast<double>(cfg.n_x) * cfg.n_x /
                            (e * (k - 1.0) * (k - 1.0) * resolved_delta(cfg));
        tasks.push_back({c, k, e, cost});
      }
    }
  }
  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tasks[a].cost > tasks[b].cost; });

  ValidationReport report;
  report.jobs = std::max(1u, jobs);
  report.runs.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex done_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= order.size()) return;
      const Task& t = tasks[order[slot]];
      RunOutcome o = evaluate_run(t.c, t.k, t.eps, sweep_run_config(spec, t.c, t.k, t.eps));
      report.runs[order[slot]] = std::move(o);
      if (on_done) {
        std::lock_guard lock(done_mutex);
        on_done(report.runs[order[slot]]);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(report.jobs, static_cast<unsigned>(tasks.size()));
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  try {
    report.trends = trend_checks(report.runs);
  } catch (const InsufficientCoverage& e) {
    report.trend_error = e.what();
  }
  report.passed =
      std::all_of(report.runs.begin(), report.runs.end(), [](const auto& r) { return r.passed; }) &&
      std::all_of(report.trends.begin(), report.trends.end(), [](const auto& c) { return c.passed; });
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline std::string run_directory_name(double c, double k, double eps) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "c=%g_k=%g_eps=%g", c, k, eps);
  return buf;
}

inline std::string snapshot_file_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%.9g.csv", t);
  return buf;
}

inline nlohmann::json run_summary_json(const RunRecord& rec) {
  nlohmann::json params = config::model_json(rec.config.model);
  params["k"] = rec.config.k;
  params["eps"] = rec.config.eps;
  params["n_x"] = rec.config.n_x;
  params["delta"] = rec.delta;
  return nlohmann::json{{"params", params},
                        {"h_final", rec.final_state.h},
                        {"t_final", rec.final_state.t},
                        {"h_s", rec.h_s},
                        {"steady_error", rec.steady_error},
                        {"profile_error", rec.profile_error},
                        {"converged", rec.converged},
                        {"t_converged", rec.t_converged},
                        {"steps", rec.final_state.step_count},
                        {"clamp_count", rec.final_state.clamp_count},
                        {"wall_time", rec.wall_time_s}};
}

inline std::string series_csv(const RunRecord& rec) {
  io::CsvWriter w({"t", "h", "dt"});
  for (const auto& r : rec.series) w.row({r.t, r.h, r.dt});
  return w.str();
}

inline std::string snapshot_csv(const Snapshot& snap) {
  const auto p = to_physical(snap);
  io::CsvWriter w({"x", "u"});
  for (std::size_t i = 0; i < p.x.size(); ++i) w.row({p.x[i], p.u[i]});
  return w.str();
}

/// series.csv, snapshot_<t>.csv, summary.json and manifest.json in `dir`.
inline void write_run_artifacts(const RunRecord& rec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> artifacts{"series.csv", "summary.json"};
  io::CsvWriter::write_text(dir / "series.csv", series_csv(rec));
  for (const auto& snap : rec.snapshots) {
    const std::string name = snapshot_file_name(snap.t);
    io::CsvWriter::write_text(dir / name, snapshot_csv(snap));
    artifacts.push_back(name);
  }
  io::write_json(dir / "summary.json", run_summary_json(rec));
  artifacts.push_back("manifest.json");
  io::write_json(dir / "manifest.json",
                 config::make_manifest(config::resolved_json(rec.config), artifacts).to_json());
}

inline nlohmann::json check_json(const Check& c) {
  return nlohmann::json{{"name", c.name},
                        {"passed", c.passed},
                        {"measured", c.measured},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}};
}

inline nlohmann::json maybe(double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); }

inline std::string cell(double x) { return std::isnan(x) ? std::string("n/a") : io::fmt(x); }

/// The cross-regime table; no timings, so equal sweeps give equal bytes.
inline std::string report_csv(const ValidationReport& report) {
  io::CsvWriter w({"c", "k", "eps", "passed", "converged", "h_final", "h_s", "steady_gap",
                   "profile_gap", "t_steady", "small_time_exponent", "lambda_fit",
                   "lambda_eigen", "lambda_ratio", "outer_gap", "steps", "clamp_count",
                   "failed_checks"});
  for (const auto& r : report.runs) {
    std::string failed;
    for (const auto& c : r.checks) {
      if (!c.passed) failed += (failed.empty() ? "" : ";") + c.name;
    }
    if (!r.completed) failed = "error";
    const auto& rec = r.record;
    w.raw_row({io::fmt(r.c), io::fmt(r.k), io::fmt(r.eps), r.passed ? "1" : "0",
               rec.converged ? "1" : "0", r.completed ? io::fmt(rec.final_state.h) : "n/a",
               r.completed ? io::fmt(rec.h_s) : "n/a", cell(r.row.steady_gap),
               cell(r.row.profile_gap), cell(r.row.t_steady), cell(r.row.small_time_exponent),
               cell(r.row.lambda_fit), cell(r.row.lambda_eigen), cell(r.row.lambda_ratio),
               cell(r.row.outer_gap), std::to_string(rec.final_state.step_count),
               std::to_string(rec.final_state.clamp_count), failed.empty() ? "none" : failed});
  }
  return w.str();
}

inline nlohmann::json report_json(const ValidationReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : report.runs) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    nlohmann::json row{{"steady_gap", maybe(r.row.steady_gap)},
                       {"profile_gap", maybe(r.row.profile_gap)},
                       {"t_steady", maybe(r.row.t_steady)},
                       {"small_time_exponent", maybe(r.row.small_time_exponent)},
                       {"lambda_fit", maybe(r.row.lambda_fit)},
                       {"lambda_eigen", maybe(r.row.lambda_eigen)},
                       {"lambda_ratio", maybe(r.row.lambda_ratio)},
                       {"outer_gap", maybe(r.row.outer_gap)},
                       {"notes", r.row.notes}};
    runs.push_back({{"c", r.c},
                    {"k", r.k},
                    {"eps", r.eps},
                    {"directory", run_directory_name(r.c, r.k, r.eps)},
                    {"completed", r.completed},
                    {"error", r.error},
                    {"converged", r.record.converged},
                    {"passed", r.passed},
                    {"checks", checks},
                    {"reconcile", row}});
  }
  nlohmann::json trends = nlohmann::json::array();
  for (const auto& c : report.trends) trends.push_back(check_json(c));
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return nlohmann::json{{"verdict", report.passed ? "pass" : "fail"},
                        {"runs", runs},
                        {"trends", trends},
                        {"trend_error", report.trend_error},
                        {"metadata",
                         {{"generated_at", stamp},
                          {"wall_time_s", report.wall_time_s},
                          {"jobs", report.jobs},
                          {"tool_version", config::kToolVersion}}}};
}

/// report.json, report.csv and one directory of artifacts per run.
inline void write_report(const ValidationReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::CsvWriter::write_text(dir / "report.csv", report_csv(report));
  io::write_json(dir / "report.json", report_json(report));
  for (const auto& r : report.runs) {
    if (r.completed) write_run_artifacts(r.record, dir / "runs" / run_directory_name(r.c, r.k, r.eps));
  }
}

/// Sweep document: c_values, k_values, eps_values plus shared solver fields.
inline SweepSpec sweep_spec(const config::Document& doc) {
  std::set<std::string> allowed = config::solver_keys();
  for (const char* k : {"c", "k", "eps", "conductivity"}) allowed.erase(k);
  for (const char* k : {"c_values", "k_values", "eps_values"}) allowed.insert(k);
  doc.reject_unknown(allowed);
  SweepSpec spec;
  spec.c_values = doc.numbers("c_values", spec.c_values);
  spec.k_values = doc.numbers("k_values", spec.k_values);
  spec.eps_values = doc.numbers("eps_values", spec.eps_values);
  config::Document base = doc;
  for (const char* k : {"c_values", "k_values", "eps_values"}) base.values.erase(k);
  if (base.has("delta") && !base.values.at("delta").is_null()) {
    // an explicit delta must respect the small-time horizon of every run
    const double d = base.number("delta", 0.0);
    for (double c : spec.c_values) {
      for (double k : spec.k_values) {
        for (double e : spec.eps_values) {
          SolverConfig probe;
          probe.model = ConductivityModel::quadratic(c);
          probe.k = k;
          probe.eps = e;
          probe.delta = d;
          validate(probe);
        }
      }
    }
    base.values["k"] = spec.k_values.front();
    base.values["eps"] = spec.eps_values.front();
    base.values["c"] = spec.c_values.front();
  }
  spec.base = config::solver_config(base);
  validate(spec);
  return spec;
}

inline nlohmann::json resolved_json(const SweepSpec& spec) {
  nlohmann::json j = config::resolved_json(spec.base);
  for (const char* k : {"c", "k", "eps", "conductivity"}) j.erase(k);
  if (!spec.base.delta) j["delta"] = nullptr;
  j["c_values"] = spec.c_values;
  j["k_values"] = spec.k_values;
  j["eps_values"] = spec.eps_values;
  return j;
}

}  // namespace waxfront
