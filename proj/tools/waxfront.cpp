// waxfront: command line front end for the wax layer solver.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "waxfront/config.hpp"
#include "waxfront/dimensional.hpp"
#include "waxfront/eps_asymptotics.hpp"
#include "waxfront/fd_solver.hpp"
#include "waxfront/harness.hpp"
#include "waxfront/io.hpp"
#include "waxfront/large_time_eigen.hpp"
#include "waxfront/small_time.hpp"
#include "waxfront/steady_state.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace waxfront;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out;
  std::vector<std::string> sets;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

config::Document load(const CommonOptions& o) {
  config::Document doc;
  if (!o.config_path.empty()) doc = config::parse_document(io::read_text(o.config_path));
  config::apply_overrides(doc, o.sets);
  return doc;
}

fs::path output_dir(const CommonOptions& o, const std::string& sub) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("WAXFRONT_OUT"); env && *env) return fs::path(env) / sub;
  return fs::path("waxfront_out") / sub;
}

void finish(const fs::path& dir, const json& resolved, std::vector<std::string> artifacts) {
  artifacts.push_back("manifest.json");
  io::write_json(dir / "manifest.json", config::make_manifest(resolved, artifacts).to_json());
  std::cout << "wrote " << dir.string() << "\n";
}

/// The model and k (and eps where needed) without the solver-only checks.
struct ProblemPart {
  ConductivityModel model = ConductivityModel::quadratic(0.0);
  double k = 2.0;
  double eps = 0.1;
};

ProblemPart problem(const config::Document& doc, std::initializer_list<const char*> extra) {
  // solver-only fields are accepted so one file can drive every subcommand
  std::set<std::string> allowed = config::solver_keys();
  for (const char* k : extra) allowed.insert(k);
  doc.reject_unknown(allowed);
  ProblemPart p;
  p.model = config::model_from(doc);
  p.k = doc.number("k", p.k);
  p.eps = doc.number("eps", p.eps);
  if (!(p.k > 1.0)) {
    throw InvalidConfig("k = " + std::to_string(p.k) +
                        ": a wax layer requires k > 1 (cooling must beat the oil heat flux)");
  }
  if (!(p.eps > 0.0)) throw InvalidConfig("eps must be positive");
  return p;
}

json problem_json(const ProblemPart& p) {
  json j = config::model_json(p.model);
  j["k"] = p.k;
  j["eps"] = p.eps;
  return j;
}

int cmd_solve(const CommonOptions& o) {
  const auto doc = load(o);
  const SolverConfig cfg = config::solver_config(doc);
  const fs::path dir = output_dir(o, "solve");
  const RunRecord rec = run(cfg);
  write_run_artifacts(rec, dir);
  std::printf("h_final = %.17g  h_s = %.17g  steady_error = %.3g  converged = %s  steps = %lld\n",
              rec.final_state.h, rec.h_s, rec.steady_error, rec.converged ? "yes" : "no",
              rec.final_state.step_count);
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

int cmd_steady(const CommonOptions& o) {
  const auto doc = load(o);
  const auto p = problem(doc, {"samples"});
  const int samples = doc.integer("samples", 101);
  if (samples < 2) throw InvalidConfig("samples must be at least 2");
  const double hs = steady_height(p.model, p.k);
  const fs::path dir = output_dir(o, "steady");
  io::CsvWriter w({"x", "u"});
  for (int i = 0; i < samples; ++i) {
    const double x = hs * i / (samples - 1);
    w.row({x, steady_profile(p.model, p.k, x)});
  }
  w.save(dir / "steady.csv");
  const auto inflection = steady_inflection_point(p.model, p.k);
  json summary{{"h_s", hs},
               {"mean_conductivity", mean_conductivity(p.model, p.k)},
               {"dh_s_dk", steady_height_derivative(p.model, p.k)},
               {"inflection_x", inflection ? json(*inflection) : json(nullptr)}};
  io::write_json(dir / "summary.json", summary);
  json resolved = problem_json(p);
  resolved.erase("eps");
  resolved["samples"] = samples;
  std::printf("h_s = %.17g\n", hs);
  finish(dir, resolved, {"steady.csv", "summary.json"});
  return 0;
}

int cmd_smalltime(const CommonOptions& o) {
  const auto doc = load(o);
  const auto p = problem(doc, {"t_max", "samples"});
  const auto c = make_small_time(p.model, p.eps, p.k);
  const double t_max = doc.number("t_max", c.validity_horizon());
  const int samples = doc.integer("samples", 101);
  if (!(t_max > 0.0) || samples < 2) throw InvalidConfig("t_max > 0 and samples >= 2 required");
  const fs::path dir = output_dir(o, "smalltime");
  io::CsvWriter w({"t", "h"});
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * i / (samples - 1);
    w.row({t, h_series(c, t)});
  }
  w.save(dir / "smalltime.csv");
  const auto [ux, uxx] = initial_slope_limits(c);
  io::write_json(dir / "summary.json", json{{"H1", c.H1},
                                            {"H2", c.H2},
                                            {"validity_horizon", c.validity_horizon()},
                                            {"u_x_limit", ux},
                                            {"u_xx_limit", uxx}});
  json resolved = problem_json(p);
  resolved["t_max"] = t_max;
  resolved["samples"] = samples;
  finish(dir, resolved, {"smalltime.csv", "summary.json"});
  return 0;
}

int cmd_eigen(const CommonOptions& o) {
  const auto doc = load(o);
  const auto p = problem(doc, {});
  const EigenPair pair = solve_principal_eigen(p.model, p.k, p.eps);
  const fs::path dir = output_dir(o, "eigen");
  io::CsvWriter w({"x", "psi0", "psi0_small_eps"});
  const double alpha = small_eps_alpha(p.model, p.k);
  const double shift = p.model.D(1.0 / p.k) / p.k;
  const std::size_t stride = std::max<std::size_t>(1, pair.x.size() / 400);
  for (std::size_t j = 0; j < pair.x.size(); j += stride) {
    w.row({pair.x[j], pair.psi0[j], alpha * (pair.x[j] + shift)});
  }
  if ((pair.x.size() - 1) % stride) {
    w.row({pair.x.back(), pair.psi0.back(), alpha * (pair.x.back() + shift)});
  }
  w.save(dir / "eigen.csv");
  io::write_json(dir / "summary.json",
                 json{{"lambda0", pair.lambda0},
                      {"rayleigh_quotient", rayleigh_quotient(pair, p.model, p.k, p.eps)},
                      {"lambda0_small_eps", lambda0_small_eps(p.model, p.k)},
                      {"norm_constant", pair.norm_constant},
                      {"alpha", alpha},
                      {"h_s", pair.h_s}});
  std::printf("lambda0 = %.17g\n", pair.lambda0);
  finish(dir, problem_json(p), {"eigen.csv", "summary.json"});
  return 0;
}

int cmd_asymptotic(const CommonOptions& o) {
  const auto doc = load(o);
  const auto p = problem(doc, {"t_end", "dt_out", "snapshot_times", "samples"});
  const double t_end = doc.number("t_end", 20.0);
  const double dt_out = doc.number("dt_out", 0.01);
  const auto snaps = doc.numbers("snapshot_times", {});
  const int samples = doc.integer("samples", 101);
  if (samples < 2) throw InvalidConfig("samples must be at least 2");
  const OuterSolution outer = integrate_h0(p.model, p.k, t_end, dt_out);
  const fs::path dir = output_dir(o, "asymptotic");
  io::CsvWriter w({"t", "h0", "A"});
  for (std::size_t j = 0; j < outer.t_grid.size(); ++j) {
    w.row({outer.t_grid[j], outer.h0_values[j], outer.slope_values[j] + 1.0});
  }
  w.save(dir / "asymptotic.csv");
  std::vector<std::string> artifacts{"asymptotic.csv", "summary.json"};
  for (double t : snaps) {
    const double h0 = outer.h0(t);
    io::CsvWriter s({"x", "u"});
    for (int i = 0; i < samples; ++i) {
      const double x = h0 * i / (samples - 1);
      s.row({x, u0_profile(p.model, p.k, h0, x)});
    }
    char name[64];
    std::snprintf(name, sizeof name, "u0_%.9g.csv", t);
    s.save(dir / name);
    artifacts.emplace_back(name);
  }
  io::write_json(dir / "summary.json", json{{"h_s", outer.h_s},
                                            {"mu", outer.mu},
                                            {"h0_final", outer.h0_values.back()},
                                            {"t_tail", std::isfinite(outer.t_tail)
                                                           ? json(outer.t_tail)
                                                           : json(nullptr)}});
  json resolved = problem_json(p);
  resolved.erase("eps");
  resolved["t_end"] = t_end;
  resolved["dt_out"] = dt_out;
  resolved["snapshot_times"] = snaps;
  resolved["samples"] = samples;
  finish(dir, resolved, artifacts);
  return 0;
}

int cmd_sweep(const CommonOptions& o, bool strict_exit) {
  const auto doc = load(o);
  const SweepSpec spec = sweep_spec(doc);
  const fs::path dir = output_dir(o, strict_exit ? "validate" : "sweep");
  std::printf("running %zu cases on %u jobs\n", spec.size(), o.jobs);
  const auto report = run_sweep(spec, o.jobs, [](const RunOutcome& r) {
    std::printf("  c=%g k=%g eps=%g: %s%s%s\n", r.c, r.k, r.eps, r.passed ? "pass" : "FAIL",
                r.error.empty() ? "" : " ", r.error.c_str());
    std::fflush(stdout);
  });
  write_report(report, dir);
  for (const auto& t : report.trends) {
    if (!t.passed) std::printf("  trend FAIL: %s (%.6g)\n", t.name.c_str(), t.measured);
  }
  if (!report.trend_error.empty()) std::printf("  trends: %s\n", report.trend_error.c_str());
  std::printf("verdict: %s (%.1f s)\n", report.passed ? "pass" : "fail", report.wall_time_s);
  finish(dir, resolved_json(spec), {"report.json", "report.csv", "runs"});
  return strict_exit && !report.passed ? 1 : 0;
}

int cmd_convert(const CommonOptions& o) {
  const auto doc = load(o);
  doc.reject_unknown({"c_w", "H_w", "rho_w", "k_w_h", "T_c", "T_h", "T_o", "k_p", "k_c", "Nu_c",
                      "d_c", "d_p", "k_o", "Nu", "R"});
  PhysicalInputs in;
  in.c_w = doc.number("c_w", in.c_w);
  in.H_w = doc.number("H_w", in.H_w);
  in.rho_w = doc.number("rho_w", in.rho_w);
  in.k_w_h = doc.number("k_w_h", in.k_w_h);
  in.T_c = doc.number("T_c", in.T_c);
  in.T_h = doc.number("T_h", in.T_h);
  in.T_o = doc.number("T_o", in.T_o);
  in.k_p = doc.number("k_p", in.k_p);
  in.k_c = doc.number("k_c", in.k_c);
  in.Nu_c = doc.number("Nu_c", in.Nu_c);
  in.d_c = doc.number("d_c", in.d_c);
  in.d_p = doc.number("d_p", in.d_p);
  in.k_o = doc.number("k_o", in.k_o);
  in.Nu = doc.number("Nu", in.Nu);
  in.R = doc.number("R", in.R);
  const auto g = dimensional_to_dimensionless(in);
  const fs::path dir = output_dir(o, "convert");
  io::write_json(dir / "dimensionless.json",
                 json{{"eps", g.eps}, {"k", g.k}, {"T_s", g.T_s}, {"x_s", g.x_s}, {"t_s", g.t_s}});
  std::printf("eps = %.6g  k = %.6g  T_s = %.6g  x_s = %.6g m  t_s = %.6g s\n", g.eps, g.k, g.T_s,
              g.x_s, g.t_s);
  json resolved{{"c_w", in.c_w},   {"H_w", in.H_w},   {"rho_w", in.rho_w}, {"k_w_h", in.k_w_h},
                {"T_c", in.T_c},   {"T_h", in.T_h},   {"T_o", in.T_o},     {"k_p", in.k_p},
                {"k_c", in.k_c},   {"Nu_c", in.Nu_c}, {"d_c", in.d_c},     {"d_p", in.d_p},
                {"k_o", in.k_o},   {"Nu", in.Nu},     {"R", in.R}};
  finish(dir, resolved, {"dimensionless.json"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"waxfront: wax layer growth with temperature dependent conductivity"};
  app.require_subcommand(1);
  CommonOptions opts;

  auto add_common = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--config", opts.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output directory (default $WAXFRONT_OUT/<command>)");
    sub->add_option("--set", opts.sets, "override a config field, key=value")->take_all();
    if (with_jobs) sub->add_option("--jobs", opts.jobs, "parallel runs")->check(CLI::PositiveNumber);
  };

  struct Sub {
    const char* name;
    const char* help;
    bool jobs;
  };
  const Sub subs[] = {
      {"solve", "run the finite-difference solver", false},
      {"steady", "steady wax layer and profile", false},
      {"smalltime", "two-term small-time series", false},
      {"eigen", "principal decay rate by shooting", false},
      {"asymptotic", "eps -> 0 outer solution", false},
      {"sweep", "run a (c, k, eps) sweep and write the report", true},
      {"validate", "sweep and exit non-zero unless every check passes", true},
      {"convert", "physical inputs to eps, k and scales", false},
  };
  std::vector<CLI::App*> cmds;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, s.jobs);
    cmds.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmds[0]->parsed()) return cmd_solve(opts);
    if (cmds[1]->parsed()) return cmd_steady(opts);
    if (cmds[2]->parsed()) return cmd_smalltime(opts);
    if (cmds[3]->parsed()) return cmd_eigen(opts);
    if (cmds[4]->parsed()) return cmd_asymptotic(opts);
    if (cmds[5]->parsed()) return cmd_sweep(opts, false);
    if (cmds[6]->parsed()) return cmd_sweep(opts, true);
    if (cmds[7]->parsed()) return cmd_convert(opts);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
