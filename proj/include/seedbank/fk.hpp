#pragma once

#include <cstdint>

#include "seedbank/dual.hpp"
#include "seedbank/pfde.hpp"

// Path-functional representation of the forced pair: the field value phi(s, x)
// equals the expectation, over a single on/off random path started at x, of
//   integral over active times r in [0, s] of
//     lambda psi_b(path(r)) * exp(-integral over active u in [0, r) of
//                                  phi(s - u, path(u)) du) dr.
// Both time integrals use left endpoints on the path's epoch partition, which
// matches the solver's explicit quadrature to O(dt).

namespace seedbank {

struct FkOptions {
  double dt_path = 0.004;
  bool unit_weight = false;   // drop the exponential discount (linearized form)
  double max_excluded = 0.01; // hard error above this exclusion fraction
};

struct FkEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  int used = 0;
  int excluded = 0;  // paths leaving the solved grid, dropped before weighting
};

// Monte Carlo evaluation at (s, x) against the recorded solution; the path
// switch rates are the solution's own coupling rate in both directions.
// Throws std::runtime_error when the excluded fraction exceeds
// options.max_excluded, and std::invalid_argument on a malformed query.
FkEstimate fk_estimate(double s, double x, const PfdeSolution& sol, int replicates,
                       std::uint64_t seed, const FkOptions& options = {});

// Paired comparison of level-hitting frequencies: the on/off path (frozen
// while dormant) versus the plain diffusion sharing the same embedded motion,
// both monitored on a dt_path mesh over wall time s. The plain path dominates
// replicate by replicate, so onoff_hit_prob <= pure_hit_prob holds exactly.
struct StoppedTailReport {
  double level = 0.0;
  double onoff_hit_prob = 0.0;
  double onoff_se = 0.0;
  double pure_hit_prob = 0.0;
  double pure_se = 0.0;
  int replicates = 0;
};

StoppedTailReport fk_stopped_tail(double s, double x, double t, double b, double c,
                                  double c_prime, Marker start, double dt_path,
                                  int replicates, std::uint64_t seed);

}  // namespace seedbank
