#pragma once

#include <cstdint>
#include <vector>

#include "seedbank/config.hpp"
#include "seedbank/grid.hpp"
#include "seedbank/rng.hpp"

// Explicit Euler scheme for the coupled active/dormant field pair
//   u += dt * [ (u_{i-1} - 2u_i + u_{i+1}) / (2 dx^2) + c (v_i - u_i) ] + sqrt(u(1-u)) xi
//   v += dt * c' (u_i - v_i)
// with xi ~ Normal(0, dt/dx) per site, clamping to [0,1], and the outermost
// two sites on each side frozen at their initial values.

namespace seedbank {

struct SpdeState {
  double t = 0.0;
  LatticeField u;
  LatticeField v;
};

// u = v = 1 on {x <= 0}, 0 elsewhere.
SpdeState initial_heaviside(const Grid1D& grid);

enum class StepKernel { serial, openmp };

// One time step. The noise at (step, site) is a pure function of the noise
// key, so both kernels produce bit-identical states.
class SpdeStepper {
 public:
  SpdeStepper(const SimConfig& cfg, StepKernel kernel, std::uint64_t noise_key);

  // Advances state by cfg.dt; step_index feeds the noise counter.
  // Throws std::runtime_error when a non-finite value appears.
  void step(SpdeState& state, int step_index);

  const SimConfig& config() const { return cfg_; }

 private:
  SimConfig cfg_;
  StepKernel kernel_;
  CounterRng noise_;
  std::vector<double> next_u_;
  std::vector<double> next_v_;
};

struct SpdeTrajectory {
  Grid1D grid;
  double dt = 0.0;
  int stride = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> u;  // one row per recorded time
  std::vector<std::vector<double>> v;

  SpdeState state_at(int row) const;
  SpdeState final_state() const { return state_at(static_cast<int>(times.size()) - 1); }
};

// Runs the front experiment from initial_heaviside; records every
// snapshot_stride-th step plus the initial and final states. Deterministic in
// (cfg.seed, cfg): identical inputs give bit-identical trajectories.
SpdeTrajectory run_spde(const SimConfig& cfg, int snapshot_stride = 1,
                        StepKernel kernel = StepKernel::serial);

// Closed-form reconstruction of the dormant field from the active history:
//   v(t) = e^{-ct} v(0) + sum_k c e^{-c(t - s_k)} u(s_k) dt   (left endpoints)
// The trajectory must be recorded at stride 1 and t must be one of its times.
std::vector<double> delay_quadrature_v(const SpdeTrajectory& traj, double c, double t);

// O(1)-memory form of the same quadrature: absorb(u_k) maintains
//   acc = sum_{j<k} c e^{-c (t_k - t_j)} u_j dt
// so acc_{k+1} = e^{-c dt} (acc_k + c dt u_k), matching the direct sum to
// round-off.
class DelayAccumulator {
 public:
  DelayAccumulator(int n, double c, double dt);

  void absorb(const std::vector<double>& u_row);
  // Prediction at the current time t_k = k dt after k absorbs.
  std::vector<double> predict(const std::vector<double>& v0) const;
  double time() const { return static_cast<double>(absorbed_) * dt_; }

 private:
  double c_;
  double dt_;
  long long absorbed_ = 0;
  std::vector<double> acc_;
};

}  // namespace seedbank
