// Command-line front end: single runs, walker estimates, cross-checks, and
// the full acceptance battery, all writing CSV results plus a manifest into
// an output directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seedbank/analytic.hpp"
#include "seedbank/battery.hpp"
#include "seedbank/dual.hpp"
#include "seedbank/experiments.hpp"
#include "seedbank/fk.hpp"
#include "seedbank/io.hpp"
#include "seedbank/pfde.hpp"
#include "seedbank/spde.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace seedbank;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> jobs;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Configuration file (key = value sections)");
  cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Base seed override");
  cmd->add_option("--reps", args.reps, "Replicate count override");
  cmd->add_option("--jobs", args.jobs, "Worker thread count (0 = library default)");
}

AppConfig load_app_config(const CommonArgs& args) {
  AppConfig cfg;
  if (!args.config_path.empty()) {
    const ConfigLoad loaded = load_config_file(args.config_path);
    if (!loaded.ok()) {
      std::string msg = "configuration errors:";
      for (const auto& e : loaded.errors) msg += "\n  " + e;
      throw CLI::ValidationError(msg);
    }
    cfg = loaded.config;
  }
  if (args.seed) cfg.sim.seed = *args.seed;
  if (args.reps) cfg.sim.reps = *args.reps;
  if (args.jobs) cfg.sim.jobs = *args.jobs;
#ifdef _OPENMP
  if (cfg.sim.jobs > 0) omp_set_num_threads(cfg.sim.jobs);
#endif
  return cfg;
}

void die_on_validation(const std::vector<std::string>& errs) {
  if (errs.empty()) return;
  std::string msg = "configuration errors:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw CLI::ValidationError(msg);
}

std::vector<WalkerStart> parse_starts(const std::string& text) {
  std::vector<WalkerStart> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--start entries must look like POSITION:a or POSITION:d");
    }
    WalkerStart ws;
    ws.x = std::stod(tok.substr(0, colon));
    const std::string m = tok.substr(colon + 1);
    if (m == "a") {
      ws.m = Marker::active;
    } else if (m == "d") {
      ws.m = Marker::dormant;
    } else {
      throw CLI::ValidationError("marker must be 'a' (active) or 'd' (dormant), got '" + m + "'");
    }
    out.push_back(ws);
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--start needs at least one POSITION:MARKER entry");
  return out;
}

std::vector<std::pair<double, double>> parse_time_points(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--points entries must look like TIME:POSITION");
    }
    out.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--points needs at least one TIME:POSITION entry");
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stod(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated number list");
  return out;
}

void write_sim_manifest(const std::string& dir, const AppConfig& cfg, int reps,
                        const std::string& started, double wall) {
  io::RunManifest m;
  m.config_text = save_config_text(cfg);
  m.base_seed = cfg.sim.seed;
  m.replicates = reps;
  for (int r = 0; r < reps; ++r) m.replicate_seeds.push_back(replicate_seed(cfg.sim.seed, r));
  m.started_utc = started;
  m.finished_utc = io::iso8601_utc_now();
  m.wall_seconds = wall;
  m.dt = cfg.sim.dt;
  m.dx = cfg.sim.grid.dx;
  m.stability_ok = cfg.sim.dt <= cfg.sim.grid.dx * cfg.sim.grid.dx / 2.0 * (1.0 + 1e-12);
  io::write_manifest(dir, m);
}

struct WallClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// --out may name either a directory or a .json file; commands whose main
// product is a JSON report accept both spellings.
struct JsonTarget {
  std::string dir;
  std::string file;
};

JsonTarget json_target(const std::string& out, const char* default_name) {
  const fs::path p(out);
  if (p.extension() == ".json") {
    std::string dir = p.parent_path().string();
    if (dir.empty()) dir = ".";
    return {dir, p.filename().string()};
  }
  return {out, default_name};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  io::write_text_file(path, j.dump(2) + "\n");
}

int cmd_spde_run(const CommonArgs& args) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.sim.validate());
  io::ensure_dir(args.out_dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  const SpdeTrajectory traj = run_spde(cfg.sim, cfg.sim.snapshot_stride, StepKernel::serial);
  const EdgeSeries es = track_edges(traj, cfg.exp.margin, cfg.exp.edge_tol);
  io::write_text_file(args.out_dir + "/fields.csv", io::trajectory_csv(traj));
  io::write_text_file(args.out_dir + "/edges.csv", io::edges_csv(es));
  write_sim_manifest(args.out_dir, cfg, 1, started, clock.seconds());

  const SpdeState fin = traj.final_state();
  const EdgeReport e = edge_report(fin.u, fin.v, cfg.exp.edge_tol);
  std::printf("t = %s  active edges [%s, %s]  dormant edges [%s, %s]  margin flags %d\n",
              io::fmt_g17(fin.t).c_str(), io::fmt_g17(e.left_u).c_str(),
              io::fmt_g17(e.right_u).c_str(), io::fmt_g17(e.left_v).c_str(),
              io::fmt_g17(e.right_v).c_str(), es.margin_flags);
  std::printf("wrote %s/fields.csv, edges.csv, manifest.json\n", args.out_dir.c_str());
  return 0;
}

int cmd_dual_run(const CommonArgs& args, const std::string& start_text,
                 const std::optional<double>& t_opt) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.sim.validate());
  const std::vector<WalkerStart> starts = parse_starts(start_text);
  const double t = t_opt.value_or(cfg.sim.t_max);
  if (t < 0.0) throw CLI::ValidationError("--t must be nonnegative");
  const JsonTarget target = json_target(args.out_dir, "dual.json");
  io::ensure_dir(target.dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  const DualMomentResult res = dual_moment_estimate(starts, t, cfg.sim.reps, cfg.sim);
  MomentSpec spec{starts};
  nlohmann::json j{{"tool", io::kToolVersion},
                   {"spec", spec.label()},
                   {"t", t},
                   {"estimate", res.estimate.mean},
                   {"stderr", res.estimate.se},
                   {"replicates", cfg.sim.reps},
                   {"events",
                    {{"jumps", res.counts.jumps},
                     {"deactivations", res.counts.deactivations},
                     {"activations", res.counts.activations},
                     {"coalescences", res.counts.coalescences}}}};
  write_json(target.dir + "/" + target.file, j);
  write_sim_manifest(target.dir, cfg, cfg.sim.reps, started, clock.seconds());

  std::printf("walker moment [%s] at t = %s: %.6g (se %.3g, %d replicates)\n",
              spec.label().c_str(), io::fmt_g17(t).c_str(), res.estimate.mean,
              res.estimate.se, cfg.sim.reps);
  return 0;
}

int cmd_duality_check(const CommonArgs& args, const std::string& start_text) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.sim.validate());
  const std::vector<WalkerStart> starts = parse_starts(start_text);
  io::ensure_dir(args.out_dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  MomentSpec spec{starts};
  const DualityReport rep = duality_gap(cfg.sim, spec, cfg.sim.t_max, cfg.sim.reps,
                                        10 * cfg.sim.reps, cfg.exp.allowance, 1000003ULL);
  io::write_text_file(args.out_dir + "/duality_gaps.csv", io::duality_csv({rep}));
  write_json(args.out_dir + "/report.json",
             nlohmann::json{{"tool", io::kToolVersion},
                            {"spec", spec.label()},
                            {"t", rep.t},
                            {"spde_mean", rep.spde.mean},
                            {"spde_se", rep.spde.se},
                            {"dual_mean", rep.dual.mean},
                            {"dual_se", rep.dual.se},
                            {"gap", rep.gap},
                            {"z", rep.z},
                            {"allowance", rep.allowance},
                            {"pass", rep.pass}});
  write_sim_manifest(args.out_dir, cfg, cfg.sim.reps, started, clock.seconds());

  std::printf("[%s] moment [%s] at t = %s: field %.6g (se %.3g) vs walkers %.6g (se %.3g), "
              "gap %.3g, z %.3g\n",
              rep.pass ? "PASS" : "FAIL", spec.label().c_str(),
              io::fmt_g17(cfg.sim.t_max).c_str(), rep.spde.mean, rep.spde.se, rep.dual.mean,
              rep.dual.se, rep.gap, rep.z);
  return rep.pass ? 0 : 1;
}

int cmd_pfde_solve(const CommonArgs& args, const std::string& scheme_name, int stride) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.pfde.validate());
  const PfdeScheme scheme = scheme_name == "memory" ? PfdeScheme::memory_quadrature
                                                    : PfdeScheme::two_component;
  io::ensure_dir(args.out_dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  // Both formulations are solved at full resolution: the report compares them,
  // the snapshot CSV subsamples the requested one.
  const PfdeSolution sol_two = solve_pfde(cfg.pfde, PfdeScheme::two_component, 1);
  const PfdeSolution sol_mem = solve_pfde(cfg.pfde, PfdeScheme::memory_quadrature, 1);
  const PfdeSolution& sol = scheme == PfdeScheme::two_component ? sol_two : sol_mem;

  std::string csv = "t,x,phi,companion\n";
  for (int r = 0; r < sol.rows(); ++r) {
    if (r % stride != 0 && r != sol.rows() - 1) continue;
    for (int i = 0; i < cfg.pfde.grid.n; ++i) {
      csv += io::fmt_g17(sol.times[r]) + "," + io::fmt_g17(cfg.pfde.grid.point(i)) + "," +
             io::fmt_g17(sol.phi_at(r, i)) + "," + io::fmt_g17(sol.companion_at(r, i)) + "\n";
    }
  }
  io::write_text_file(args.out_dir + "/phi.csv", csv);

  const Bound1Report bound = verify_bound1(sol, 12.0);
  const EnvelopeReport env = verify_envelope(sol, cfg.pfde.t_max, 1e3);
  double phi_gap = 0.0, companion_gap = 0.0;
  for (int r = 0; r < sol_two.rows(); ++r) {
    for (int i = 0; i < cfg.pfde.grid.n; ++i) {
      phi_gap = std::max(phi_gap, std::abs(sol_two.phi_at(r, i) - sol_mem.phi_at(r, i)));
      companion_gap = std::max(
          companion_gap, std::abs(sol_two.companion_at(r, i) - sol_mem.companion_at(r, i)));
    }
  }
  const double equiv_tol = 1e-3 * cfg.pfde.lambda;
  const bool equiv_ok = companion_gap <= equiv_tol;

  write_json(args.out_dir + "/report.json",
             nlohmann::json{
                 {"tool", io::kToolVersion},
                 {"scheme", scheme == PfdeScheme::two_component ? "two" : "memory"},
                 {"barrier",
                  {{"alpha", bound.alpha},
                   {"max_stat", bound.max_stat},
                   {"max_stat_left_half", bound.max_stat_half},
                   {"arg_s", bound.arg_s},
                   {"arg_x", bound.arg_x},
                   {"holds", bound.holds}}},
                 {"envelope",
                  {{"K_star", env.K_star},
                   {"ceiling", env.K},
                   {"arg_s", env.arg_s},
                   {"arg_x", env.arg_x},
                   {"holds", env.holds},
                   {"trend_ok", env.trend_ok}}},
                 {"equivalence",
                  {{"max_phi_gap", phi_gap},
                   {"max_companion_gap", companion_gap},
                   {"tolerance", equiv_tol},
                   {"holds", equiv_ok}}}});

  AppConfig echo = cfg;
  write_sim_manifest(args.out_dir, echo, 0, started, clock.seconds());
  std::printf("solved %s scheme to t = %s; barrier max %.6g (alpha 12: %s), envelope K* %.6g, "
              "formulation gap %.3g\n",
              scheme == PfdeScheme::two_component ? "two-component" : "memory",
              io::fmt_g17(cfg.pfde.t_max).c_str(), bound.max_stat,
              bound.holds ? "holds" : "violated", env.K_star, companion_gap);
  return bound.holds && env.holds && equiv_ok ? 0 : 1;
}

int cmd_fk_check(const CommonArgs& args, const std::string& points_text) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.pfde.validate());
  die_on_validation(cfg.fk.validate());
  const auto points = parse_time_points(points_text);
  const JsonTarget target = json_target(args.out_dir, "fk_report.json");
  io::ensure_dir(target.dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  const PfdeSolution sol = solve_pfde(cfg.pfde, PfdeScheme::two_component, 1);
  bool all_pass = true;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto [s, x] = points[k];
    FkOptions fo;
    fo.dt_path = cfg.fk.dt_path;
    const FkEstimate est = fk_estimate(s, x, sol, cfg.sim.reps, cfg.sim.seed + 7000 + k, fo);
    const double ref = sol.interp_phi(s, x);
    const bool ok = std::abs(est.value - ref) <= 3.0 * est.stderr_ + 0.01;
    all_pass = all_pass && ok;
    rows.push_back(nlohmann::json{{"s", s},
                                  {"x", x},
                                  {"pde", ref},
                                  {"mc", est.value},
                                  {"stderr", est.stderr_},
                                  {"paths_used", est.used},
                                  {"paths_excluded", est.excluded},
                                  {"pass", ok}});
    std::printf("[%s] phi(%.4g, %.4g): solver %.6g vs paths %.6g (se %.3g)\n",
                ok ? "PASS" : "FAIL", s, x, ref, est.value, est.stderr_);
  }
  write_json(target.dir + "/" + target.file,
             nlohmann::json{{"tool", io::kToolVersion},
                            {"replicates", cfg.sim.reps},
                            {"dt_path", cfg.fk.dt_path},
                            {"tolerance", "3 stderr + 0.01"},
                            {"points", rows},
                            {"pass", all_pass}});
  write_sim_manifest(target.dir, cfg, cfg.sim.reps, started, clock.seconds());
  return all_pass ? 0 : 1;
}

int cmd_interface_stats(const CommonArgs& args, const std::string& levels_text) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.sim.validate());
  const std::vector<double> levels = parse_doubles(levels_text);
  io::ensure_dir(args.out_dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  const TailCurve tc = edge_tail_curve(cfg.sim, cfg.sim.reps, levels);
  io::write_text_file(args.out_dir + "/tail.csv", io::tail_csv(tc));

  // Edge trajectories for a deterministic sample of replicates (plot data);
  // the full per-replicate dump lives in the acceptance battery output.
  const int edge_reps = std::min(cfg.sim.reps, 8);
  int flags0 = 0;
  for (int r = 0; r < edge_reps; ++r) {
    SimConfig rc = cfg.sim;
    rc.seed = replicate_seed(cfg.sim.seed, r);
    const EdgeSeries es = track_edges(run_spde(rc, 1, StepKernel::serial), cfg.exp.margin,
                                      cfg.exp.edge_tol);
    if (r == 0) flags0 = es.margin_flags;
    io::write_text_file(args.out_dir + "/edges_rep" + std::to_string(r) + ".csv",
                        io::edges_csv(es));
  }

  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < tc.levels.size(); ++i) {
    rows.push_back(nlohmann::json{{"b", tc.levels[i]},
                                  {"p_hat", tc.p_hat[i]},
                                  {"ci_lo", tc.ci_lo[i]},
                                  {"ci_hi", tc.ci_hi[i]}});
  }
  write_json(args.out_dir + "/report.json",
             nlohmann::json{{"tool", io::kToolVersion},
                            {"replicates", cfg.sim.reps},
                            {"t_max", cfg.sim.t_max},
                            {"levels", rows},
                            {"edge_trajectories_written", edge_reps}});
  write_sim_manifest(args.out_dir, cfg, cfg.sim.reps, started, clock.seconds());

  std::printf("exceedance of the running right active edge over %d replicates:\n", cfg.sim.reps);
  for (std::size_t i = 0; i < tc.levels.size(); ++i) {
    std::printf("  level %-6s p = %.4g  [%.4g, %.4g]\n", io::fmt_g17(tc.levels[i]).c_str(),
                tc.p_hat[i], tc.ci_lo[i], tc.ci_hi[i]);
  }
  std::printf("replicate 0: margin flags %d\n", flags0);
  return 0;
}

int cmd_symmetry_check(const CommonArgs& args, const std::string& points_text) {
  const AppConfig cfg = load_app_config(args);
  die_on_validation(cfg.sim.validate());
  const std::vector<double> points = parse_doubles(points_text);
  io::ensure_dir(args.out_dir);
  const std::string started = io::iso8601_utc_now();
  WallClock clock;

  const SymmetryReport rep = symmetry_check(cfg.sim, cfg.sim.reps, points);
  io::write_text_file(args.out_dir + "/symmetry.csv", io::symmetry_csv(rep));
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : rep.points) {
    rows.push_back(
        nlohmann::json{{"x", p.x}, {"mean", p.y.mean}, {"stderr", p.y.se}, {"z", p.z}});
  }
  write_json(args.out_dir + "/report.json",
             nlohmann::json{{"tool", io::kToolVersion},
                            {"t", rep.t},
                            {"replicates", cfg.sim.reps},
                            {"points", rows},
                            {"pass", rep.pass}});
  write_sim_manifest(args.out_dir, cfg, cfg.sim.reps, started, clock.seconds());

  for (const auto& p : rep.points) {
    std::printf("x = %-6s mean(u(t,x) + u(t,-x) - 1) = %9.3g  se %.3g  z %.3g\n",
                io::fmt_g17(p.x).c_str(), p.y.mean, p.y.se, p.z);
  }
  std::printf("[%s] all |z| <= 3 at t = %s over %d replicates\n", rep.pass ? "PASS" : "FAIL",
              io::fmt_g17(rep.t).c_str(), cfg.sim.reps);
  return rep.pass ? 0 : 1;
}

int cmd_accept(const CommonArgs& args, bool quick) {
  BatteryOptions opt;
  opt.out_dir = args.out_dir;
  if (args.seed) opt.seed = *args.seed;
  if (args.jobs) opt.jobs = *args.jobs;
  opt.quick = quick;

  const std::vector<CriterionResult> results = run_acceptance(opt);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %02d %-28s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %zu/%zu checks passed\n", all_pass ? "ACCEPTED" : "REJECTED",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const CriterionResult& r) { return r.pass; })),
              results.size());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seedbank: numerical laboratory for a fluctuating front with a dormant reservoir"};
  app.require_subcommand(1);

  CommonArgs a_spde, a_dual, a_dcheck, a_pfde, a_fk, a_iface, a_sym, a_accept;
  std::string dual_start = "0:a", dcheck_start = "0:a";
  std::optional<double> dual_t;
  std::string fk_points = "0.25:0,0.5:0";
  std::string iface_levels = "1,2,3,4,5";
  std::string sym_points = "0,0.5,1";
  std::string pfde_scheme = "two";
  int pfde_stride = 1;
  bool accept_quick = false;

  CLI::App* spde = app.add_subcommand("spde-run", "Run one stochastic front simulation");
  add_common(spde, a_spde);

  CLI::App* dual = app.add_subcommand("dual-run", "Estimate a moment with the walker system");
  add_common(dual, a_dual);
  dual->add_option("--start", dual_start, "Walker starts, e.g. 0:a,0.5:d")->capture_default_str();
  dual->add_option("--t", dual_t, "Evaluation time (defaults to t_max)");

  CLI::App* dcheck = app.add_subcommand("duality-check", "Compare a field moment against walkers");
  add_common(dcheck, a_dcheck);
  dcheck->add_option("--start", dcheck_start, "Moment points, e.g. 0:a,0.5:d")
      ->capture_default_str();

  CLI::App* pfde = app.add_subcommand("pfde-solve", "Solve the forced comparison pair");
  add_common(pfde, a_pfde);
  pfde->add_option("--scheme", pfde_scheme, "two | memory")->capture_default_str();
  pfde->add_option("--stride", pfde_stride, "Row recording stride")->capture_default_str();

  CLI::App* fk = app.add_subcommand("fk-check", "Compare the solver against path functionals");
  add_common(fk, a_fk);
  fk->add_option("--points", fk_points, "Evaluation points TIME:POSITION,...")
      ->capture_default_str();

  CLI::App* iface = app.add_subcommand("interface-stats", "Front-edge statistics across replicates");
  add_common(iface, a_iface);
  iface->add_option("--levels", iface_levels, "Exceedance levels")->capture_default_str();

  CLI::App* sym = app.add_subcommand("symmetry-check", "Mirror statistic of the active field");
  add_common(sym, a_sym);
  sym->add_option("--points", sym_points, "Nonnegative positions")->capture_default_str();

  CLI::App* accept = app.add_subcommand("accept", "Run the full acceptance battery");
  add_common(accept, a_accept);
  accept->add_flag("--quick", accept_quick, "Reduced replicate counts (smoke run)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spde->parsed()) return cmd_spde_run(a_spde);
    if (dual->parsed()) return cmd_dual_run(a_dual, dual_start, dual_t);
    if (dcheck->parsed()) return cmd_duality_check(a_dcheck, dcheck_start);
    if (pfde->parsed()) return cmd_pfde_solve(a_pfde, pfde_scheme, pfde_stride);
    if (fk->parsed()) return cmd_fk_check(a_fk, fk_points);
    if (iface->parsed()) return cmd_interface_stats(a_iface, iface_levels);
    if (sym->parsed()) return cmd_symmetry_check(a_sym, sym_points);
    if (accept->parsed()) return cmd_accept(a_accept, accept_quick);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
