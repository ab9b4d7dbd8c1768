#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seedbank/config.hpp"
#include "seedbank/dual.hpp"
#include "seedbank/spde.hpp"
#include "seedbank/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seedbank {

// Runs `reps` independent field simulations (seed = base + replicate index)
// and maps each trajectory through `fn(rep, trajectory)`. Results are stored
// in replicate order regardless of thread scheduling, so any downstream
// fixed-order reduction is reproducible.
template <typename F>
auto run_replicates(const SimConfig& cfg, int reps, int stride, StepKernel kernel, F&& fn) {
  using R = decltype(fn(0, std::declval<const SpdeTrajectory&>()));
  if (reps < 1) throw std::invalid_argument("run_replicates: reps must be >= 1");
  std::vector<R> out(reps);
  std::vector<std::exception_ptr> errs(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int rep = 0; rep < reps; ++rep) {
    try {
      SimConfig rc = cfg;
      rc.seed = replicate_seed(cfg.seed, rep);
      const SpdeTrajectory traj = run_spde(rc, stride, kernel);
      out[rep] = fn(rep, traj);
    } catch (...) {
      errs[rep] = std::current_exception();
    }
  }
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// A mixed moment of the field pair: the product of u at the active points and
// v at the dormant points, all read at one time.
struct MomentSpec {
  std::vector<WalkerStart> points;
  std::string label() const;  // e.g. "0:a,0.5:d"
};

McEstimate spde_moment_estimate(const SimConfig& cfg, const MomentSpec& spec, double t,
                                int reps);

// Two-sided comparison of a field moment against its walker-system estimate.
// pass <=> |gap| <= 3 * se_combined + allowance.
struct DualityReport {
  MomentSpec spec;
  double t = 0.0;
  McEstimate spde;
  McEstimate dual;
  double gap = 0.0;
  double se = 0.0;
  double z = 0.0;
  double allowance = 0.0;
  bool pass = false;
};

DualityReport duality_gap(const SimConfig& cfg, const MomentSpec& spec, double t,
                          int reps_spde, int reps_dual, double allowance,
                          std::uint64_t dual_seed_offset = 0);

// Occupied-region endpoints through time for a single trajectory, with flags
// counting snapshots whose front comes within `margin` of the domain ends
// (finite-domain truncation ceasing to be safe).
struct EdgeSeries {
  std::vector<double> times;
  std::vector<double> left_u, right_u, left_v, right_v;
  double inf_left_u = 0.0, sup_right_u = 0.0;
  double inf_left_v = 0.0, sup_right_v = 0.0;
  int margin_flags = 0;
};

EdgeSeries track_edges(const SpdeTrajectory& traj, double margin = 3.0,
                       double tol = kEdgeTol);

// First recorded time at which any site x >= b/2 carries u >= 1/2.
std::optional<double> first_passage_tau_b(const SpdeTrajectory& traj, double b);

// P(sup over recorded times of the right u-edge exceeds b) across replicates,
// for an ascending ladder of levels, with Wilson intervals. The exceedance
// events are nested, so the curve is non-increasing by construction.
struct TailCurve {
  std::vector<double> levels;
  std::vector<double> p_hat, ci_lo, ci_hi;
  int reps = 0;
};

TailCurve edge_tail_curve(const SimConfig& cfg, int reps, const std::vector<double>& levels);

// Distribution check of Y = u(t, x) + u(t, -x) - 1 at the final time: the
// Heaviside start makes the law of u mirror-symmetric, so E[Y] = 0.
struct SymmetryPoint {
  double x = 0.0;
  McEstimate y;
  double z = 0.0;
};

struct SymmetryReport {
  double t = 0.0;
  std::vector<SymmetryPoint> points;
  bool pass = false;  // all |z| <= 3
};

SymmetryReport symmetry_check(const SimConfig& cfg, int reps, const std::vector<double>& points);

}  // namespace seedbank
