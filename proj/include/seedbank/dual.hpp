#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "seedbank/config.hpp"
#include "seedbank/rng.hpp"
#include "seedbank/stats.hpp"

// Event-driven simulation of the coalescing on/off random walk system that
// mirrors the lattice fields: active walkers jump to nearest neighbours at
// total rate 1/dx^2, fall dormant at rate c, wake at rate c', and co-located
// active pairs coalesce at rate 1/dx. Moments of the fields equal indicator
// moments of these walkers run backwards from the evaluation points.

namespace seedbank {

enum class Marker { active, dormant };

struct WalkerStart {
  double x = 0.0;
  Marker m = Marker::active;
};

struct Walker {
  int id = 0;
  std::int64_t site = 0;  // position = site * dx
  Marker m = Marker::active;
};

struct DualConfig {
  double dx = 0.1;
  double c = 1.0;        // active -> dormant rate
  double c_prime = 1.0;  // dormant -> active rate
  double jump_rate = 100.0;     // per active walker, split evenly between sides
  double coalesce_rate = 10.0;  // per co-located unordered active pair

  static DualConfig from_sim(const SimConfig& cfg);
};

struct DualCounts {
  std::uint64_t jumps = 0;
  std::uint64_t deactivations = 0;
  std::uint64_t activations = 0;
  std::uint64_t coalescences = 0;

  DualCounts& operator+=(const DualCounts& o);
};

struct DualState {
  double t = 0.0;
  std::vector<Walker> walkers;  // alive walkers; ids unique, lower id survives coalescence
  DualConfig rates;
};

DualState make_dual_state(const std::vector<WalkerStart>& starts, const DualConfig& rates);

// Advances to the next event or to t_end, whichever comes first; returns
// whether an event fired. Draw order per event: waiting time, then one
// uniform that selects within the flattened rate list (jumps left/right per
// active walker, deactivations, activations, coalescences, in walker order).
bool dual_step(DualState& state, double t_end, SequenceRng& rng, DualCounts& counts);

// Runs the walker system to t_end. Deterministic in (rng seed, inputs).
DualState run_dual(const std::vector<WalkerStart>& starts, double t_end, const DualConfig& rates,
                   SequenceRng& rng, DualCounts* counts = nullptr);

// Heaviside front indicator used as the default terminal evaluation.
double heaviside_indicator(double x);

// Monte Carlo moment estimate: mean over replicates of
//   prod_{active} u0(position) * prod_{dormant} v0(position).
// Start positions must lie on the lattice. The start list is sorted
// internally, so permutations yield identical output for the same seed.
struct DualMomentResult {
  McEstimate estimate;
  DualCounts counts;
};
DualMomentResult dual_moment_estimate(const std::vector<WalkerStart>& starts, double t, int replicates,
                                      const SimConfig& cfg,
                                      const std::function<double(double)>& u0 = heaviside_indicator,
                                      const std::function<double(double)>& v0 = heaviside_indicator);

// Continuum single-particle path that moves as a Brownian motion while
// active and freezes while dormant. Switch times are exact exponential
// clocks; positions are recorded at the union of the dt_path grid and the
// switch times, with Normal(0, elapsed-active-time) increments in between.
struct OnOffPath {
  double x0 = 0.0;
  Marker m0 = Marker::active;
  std::vector<double> times;                 // recorded epochs, times[0] = 0, back() = t_end
  std::vector<double> positions;             // one per epoch
  std::vector<std::uint8_t> active_interval; // 1 if active on [times[k], times[k+1])
  std::vector<double> switch_times;

  double active_time() const;  // total active duration over [0, t_end]
};

OnOffPath sample_onoff_path(double x0, Marker m0, double t_end, double dt_path, double on_to_off_rate,
                            double off_to_on_rate, SequenceRng& rng);

}  // namespace seedbank
