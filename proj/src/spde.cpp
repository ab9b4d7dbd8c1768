#include "seedbank/spde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seedbank {

SpdeState initial_heaviside(const Grid1D& grid) {
  SpdeState s;
  s.t = 0.0;
  s.u = LatticeField(grid, 0.0);
  s.v = LatticeField(grid, 0.0);
  for (int i = 0; i < grid.n; ++i) {
    const double val = grid.point(i) <= 1e-9 ? 1.0 : 0.0;
    s.u[i] = val;
    s.v[i] = val;
  }
  return s;
}

SpdeStepper::SpdeStepper(const SimConfig& cfg, StepKernel kernel, std::uint64_t noise_key)
    : cfg_(cfg),
      kernel_(kernel),
      noise_(noise_key),
      next_u_(static_cast<size_t>(cfg.grid.n)),
      next_v_(static_cast<size_t>(cfg.grid.n)) {
  if (cfg.grid.n < 5) throw std::invalid_argument("SpdeStepper: grid needs at least 5 points");
}

void SpdeStepper::step(SpdeState& state, int step_index) {
  const int n = cfg_.grid.n;
  const double dt = cfg_.dt;
  const double inv_2dx2 = 1.0 / (2.0 * cfg_.grid.dx * cfg_.grid.dx);
  const double c = cfg_.c;
  const double cp = cfg_.c_prime;
  const double noise_scale = cfg_.noise_on ? std::sqrt(dt / cfg_.grid.dx) : 0.0;
  const std::uint64_t base_counter = static_cast<std::uint64_t>(step_index) * static_cast<std::uint64_t>(n);
  const double* u = state.u.values.data();
  const double* v = state.v.values.data();
  double* nu = next_u_.data();
  double* nv = next_v_.data();

  // The outermost two sites on each side keep their current values.
  nu[0] = u[0];
  nu[1] = u[1];
  nu[n - 2] = u[n - 2];
  nu[n - 1] = u[n - 1];
  nv[0] = v[0];
  nv[1] = v[1];
  nv[n - 2] = v[n - 2];
  nv[n - 1] = v[n - 1];

  auto update_site = [&](int i) {
    const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_2dx2;
    const double drift = lap + c * (v[i] - u[i]);
    double du = dt * drift;
    if (noise_scale != 0.0) {
      const double amp = std::sqrt(std::max(0.0, u[i] * (1.0 - u[i])));
      du += amp * noise_scale * noise_.normal(base_counter + static_cast<std::uint64_t>(i));
    }
    nu[i] = std::clamp(u[i] + du, 0.0, 1.0);
    nv[i] = std::clamp(v[i] + dt * cp * (u[i] - v[i]), 0.0, 1.0);
  };

  if (kernel_ == StepKernel::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 2; i < n - 2; ++i) update_site(i);
  } else {
    for (int i = 2; i < n - 2; ++i) update_site(i);
  }

  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(nu[i]) || !std::isfinite(nv[i])) {
      throw std::runtime_error("spde step " + std::to_string(step_index) + ": non-finite value at site " +
                               std::to_string(i));
    }
  }
  state.u.values.swap(next_u_);
  state.v.values.swap(next_v_);
  state.t = static_cast<double>(step_index + 1) * dt;
}

SpdeState SpdeTrajectory::state_at(int row) const {
  SpdeState s;
  s.t = times.at(static_cast<size_t>(row));
  s.u.grid = grid;
  s.v.grid = grid;
  s.u.values = u.at(static_cast<size_t>(row));
  s.v.values = v.at(static_cast<size_t>(row));
  return s;
}

SpdeTrajectory run_spde(const SimConfig& cfg, int snapshot_stride, StepKernel kernel) {
  if (snapshot_stride < 1) throw std::invalid_argument("run_spde: snapshot_stride must be >= 1");
  {
    const auto errs = cfg.validate();
    if (!errs.empty()) throw std::invalid_argument("run_spde: invalid config: " + errs.front());
  }
  const int steps = cfg.steps();
  SpdeTrajectory traj;
  traj.grid = cfg.grid;
  traj.dt = cfg.dt;
  traj.stride = snapshot_stride;

  SpdeState state = initial_heaviside(cfg.grid);
  SpdeStepper stepper(cfg, kernel, stream_key(cfg.seed, Stream::spde_noise));

  auto record = [&](const SpdeState& s) {
    traj.times.push_back(s.t);
    traj.u.push_back(s.u.values);
    traj.v.push_back(s.v.values);
  };
  record(state);
  for (int k = 0; k < steps; ++k) {
    stepper.step(state, k);
    if ((k + 1) % snapshot_stride == 0 || k + 1 == steps) record(state);
  }
  return traj;
}

std::vector<double> delay_quadrature_v(const SpdeTrajectory& traj, double c, double t) {
  if (traj.stride != 1) throw std::invalid_argument("delay_quadrature_v: trajectory must be recorded at stride 1");
  if (traj.times.empty()) throw std::invalid_argument("delay_quadrature_v: empty trajectory");
  const double dt = traj.dt;
  const long long K = std::llround(t / dt);
  if (K < 0 || static_cast<size_t>(K) >= traj.times.size() ||
      std::fabs(traj.times[static_cast<size_t>(K)] - t) > 1e-9) {
    throw std::invalid_argument("delay_quadrature_v: t is not a recorded time");
  }
  const size_t n = traj.u.front().size();
  std::vector<double> out(n);
  const std::vector<double>& v0 = traj.v.front();
  const double decay = std::exp(-c * t);
  for (size_t i = 0; i < n; ++i) out[i] = decay * v0[i];
  for (long long k = 0; k < K; ++k) {
    const double w = c * std::exp(-c * (t - traj.times[static_cast<size_t>(k)])) * dt;
    const std::vector<double>& row = traj.u[static_cast<size_t>(k)];
    for (size_t i = 0; i < n; ++i) out[i] += w * row[i];
  }
  return out;
}

DelayAccumulator::DelayAccumulator(int n, double c, double dt)
    : c_(c), dt_(dt), acc_(static_cast<size_t>(n), 0.0) {}

void DelayAccumulator::absorb(const std::vector<double>& u_row) {
  if (u_row.size() != acc_.size()) throw std::invalid_argument("DelayAccumulator: size mismatch");
  const double decay = std::exp(-c_ * dt_);
  const double w = c_ * dt_;
  for (size_t i = 0; i < acc_.size(); ++i) acc_[i] = decay * (acc_[i] + w * u_row[i]);
  ++absorbed_;
}

std::vector<double> DelayAccumulator::predict(const std::vector<double>& v0) const {
  if (v0.size() != acc_.size()) throw std::invalid_argument("DelayAccumulator: size mismatch");
  const double decay = std::exp(-c_ * time());
  std::vector<double> out(acc_.size());
  for (size_t i = 0; i < acc_.size(); ++i) out[i] = decay * v0[i] + acc_[i];
  return out;
}

}  // namespace seedbank
