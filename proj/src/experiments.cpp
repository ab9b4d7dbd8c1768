#include "seedbank/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace seedbank {

std::string MomentSpec::label() const {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%g:%c", points[i].x,
                  points[i].m == Marker::active ? 'a' : 'd');
    out += buf;
  }
  return out;
}

namespace {

SimConfig config_up_to(const SimConfig& cfg, double t) {
  SimConfig rc = cfg;
  rc.t_max = t;
  if (auto errs = rc.validate(); !errs.empty()) {
    throw std::invalid_argument("moment time not reachable: " + errs.front());
  }
  return rc;
}

}  // namespace

McEstimate spde_moment_estimate(const SimConfig& cfg, const MomentSpec& spec, double t,
                                int reps) {
  if (spec.points.empty()) throw std::invalid_argument("spde_moment_estimate: empty spec");
  if (spec.points.size() > 4) {
    // Product estimators beyond four factors have unusably high variance.
    throw std::invalid_argument("spde_moment_estimate: at most 4 factors supported");
  }
  if (reps < 2) throw std::invalid_argument("spde_moment_estimate: need at least 2 replicates");
  const SimConfig rc = config_up_to(cfg, t);
  std::vector<int> idx;
  idx.reserve(spec.points.size());
  for (const auto& p : spec.points) idx.push_back(rc.grid.index_of(p.x));

  const int stride = static_cast<int>(rc.steps());
  auto samples = run_replicates(rc, reps, stride, StepKernel::serial,
                                [&](int, const SpdeTrajectory& traj) {
                                  const SpdeState s = traj.final_state();
                                  double prod = 1.0;
                                  for (std::size_t k = 0; k < idx.size(); ++k) {
                                    prod *= spec.points[k].m == Marker::active
                                                ? s.u[idx[k]]
                                                : s.v[idx[k]];
                                  }
                                  return prod;
                                });
  return mc_from_samples(samples);
}

DualityReport duality_gap(const SimConfig& cfg, const MomentSpec& spec, double t,
                          int reps_spde, int reps_dual, double allowance,
                          std::uint64_t dual_seed_offset) {
  DualityReport rep;
  rep.spec = spec;
  rep.t = t;
  rep.allowance = allowance;
  rep.spde = spde_moment_estimate(cfg, spec, t, reps_spde);

  SimConfig dual_cfg = cfg;
  dual_cfg.seed = cfg.seed + dual_seed_offset;
  const DualMomentResult dm = dual_moment_estimate(spec.points, t, reps_dual, dual_cfg);
  rep.dual = dm.estimate;

  rep.gap = rep.spde.mean - rep.dual.mean;
  rep.se = std::sqrt(rep.spde.se * rep.spde.se + rep.dual.se * rep.dual.se);
  if (rep.se > 0.0) {
    rep.z = rep.gap / rep.se;
  } else {
    rep.z = rep.gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  rep.pass = std::abs(rep.gap) <= 3.0 * rep.se + allowance;
  return rep;
}

EdgeSeries track_edges(const SpdeTrajectory& traj, double margin, double tol) {
  if (traj.times.empty()) throw std::invalid_argument("track_edges: empty trajectory");
  const Grid1D& g = traj.grid;
  EdgeSeries es;
  es.times = traj.times;
  const int rows = static_cast<int>(traj.times.size());
  for (int r = 0; r < rows; ++r) {
    const SpdeState s = traj.state_at(r);
    const EdgeReport e = edge_report(s.u, s.v, tol);
    es.left_u.push_back(e.left_u);
    es.right_u.push_back(e.right_u);
    es.left_v.push_back(e.left_v);
    es.right_v.push_back(e.right_v);
    const double lmin = std::min(e.left_u, e.left_v);
    const double rmax = std::max(e.right_u, e.right_v);
    if (lmin <= g.x_min + margin || rmax >= g.x_max - margin) ++es.margin_flags;
    if (r == 0) {
      es.inf_left_u = e.left_u;
      es.sup_right_u = e.right_u;
      es.inf_left_v = e.left_v;
      es.sup_right_v = e.right_v;
    } else {
      es.inf_left_u = std::min(es.inf_left_u, e.left_u);
      es.sup_right_u = std::max(es.sup_right_u, e.right_u);
      es.inf_left_v = std::min(es.inf_left_v, e.left_v);
      es.sup_right_v = std::max(es.sup_right_v, e.right_v);
    }
  }
  return es;
}

std::optional<double> first_passage_tau_b(const SpdeTrajectory& traj, double b) {
  const Grid1D& g = traj.grid;
  int start = 0;
  while (start < g.n && g.point(start) < b / 2.0 - 1e-9) ++start;
  if (start >= g.n) throw std::invalid_argument("first_passage_tau_b: b/2 beyond the grid");
  const int rows = static_cast<int>(traj.times.size());
  for (int r = 0; r < rows; ++r) {
    const std::vector<double>& u = traj.u[r];
    for (int i = start; i < g.n; ++i) {
      if (u[i] >= 0.5) return traj.times[r];
    }
  }
  return std::nullopt;
}

TailCurve edge_tail_curve(const SimConfig& cfg, int reps, const std::vector<double>& levels) {
  if (levels.empty()) throw std::invalid_argument("edge_tail_curve: no levels");
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw std::invalid_argument("edge_tail_curve: levels must be ascending");
  }
  if (reps < 2) throw std::invalid_argument("edge_tail_curve: need at least 2 replicates");
  // Levels near the domain boundary measure the box, not the front; refuse them.
  const double margin = 3.0;
  for (double b : levels) {
    if (b > cfg.grid.x_max - margin || b < cfg.grid.x_min + margin) {
      throw std::invalid_argument("edge_tail_curve: level " + std::to_string(b) +
                                  " is within 3 units of the domain boundary");
    }
  }

  auto sups = run_replicates(cfg, reps, 1, StepKernel::serial,
                             [&](int, const SpdeTrajectory& traj) {
                               double sup = -std::numeric_limits<double>::infinity();
                               const int rows = static_cast<int>(traj.times.size());
                               for (int r = 0; r < rows; ++r) {
                                 LatticeField f{traj.grid, traj.u[r]};
                                 sup = std::max(sup, right_edge(f));
                               }
                               return sup;
                             });

  TailCurve tc;
  tc.levels = levels;
  tc.reps = reps;
  for (double b : levels) {
    long long hits = 0;
    for (double s : sups) {
      if (s > b) ++hits;
    }
    const auto [lo, hi] = wilson_interval(hits, reps);
    tc.p_hat.push_back(static_cast<double>(hits) / reps);
    tc.ci_lo.push_back(lo);
    tc.ci_hi.push_back(hi);
  }
  for (std::size_t i = 0; i + 1 < tc.p_hat.size(); ++i) {
    if (tc.p_hat[i + 1] > tc.p_hat[i]) {
      throw std::logic_error("edge_tail_curve: nested exceedance counts not monotone");
    }
  }
  return tc;
}

SymmetryReport symmetry_check(const SimConfig& cfg, int reps, const std::vector<double>& points) {
  if (points.empty()) throw std::invalid_argument("symmetry_check: no points");
  if (reps < 2) throw std::invalid_argument("symmetry_check: need at least 2 replicates");
  std::vector<std::pair<int, int>> idx;
  for (double x : points) {
    if (x < 0.0) throw std::invalid_argument("symmetry_check: points must be nonnegative");
    idx.emplace_back(cfg.grid.index_of(x), cfg.grid.index_of(-x));
  }

  const int stride = static_cast<int>(cfg.steps());
  auto rows = run_replicates(cfg, reps, stride, StepKernel::serial,
                             [&](int, const SpdeTrajectory& traj) {
                               const SpdeState s = traj.final_state();
                               std::vector<double> y;
                               y.reserve(idx.size());
                               for (auto [ip, im] : idx) {
                                 y.push_back(s.u[ip] + s.u[im] - 1.0);
                               }
                               return y;
                             });

  SymmetryReport rep;
  rep.t = cfg.t_max;
  rep.pass = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (int r = 0; r < reps; ++r) samples.push_back(rows[r][k]);
    SymmetryPoint pt;
    pt.x = points[k];
    pt.y = mc_from_samples(samples);
    if (pt.y.se > 0.0) {
      pt.z = pt.y.mean / pt.y.se;
    } else {
      pt.z = pt.y.mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (!(std::abs(pt.z) <= 3.0)) rep.pass = false;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace seedbank
