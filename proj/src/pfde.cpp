#include "seedbank/pfde.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seedbank {

double psi(double y) {
  if (y <= 0.0) return 0.0;
  return y * y * std::exp(-y);
}

double psi_shifted(double x, double b) { return psi(x - b); }

double PfdeSolution::phi_at(int row, int i) const {
  return phi[static_cast<std::size_t>(row) * cfg.grid.n + i];
}

double PfdeSolution::companion_at(int row, int i) const {
  return companion[static_cast<std::size_t>(row) * cfg.grid.n + i];
}

double PfdeSolution::interp_phi(double s, double x) const {
  if (store_stride != 1) {
    throw std::logic_error("interp_phi requires a solution recorded at every step");
  }
  const Grid1D& g = cfg.grid;
  if (s < -1e-12 || s > cfg.t_max + 1e-9) {
    throw std::domain_error("interp_phi: time outside the recorded range");
  }
  if (x < g.x_min - 1e-9 || x > g.x_max + 1e-9) {
    throw std::domain_error("interp_phi: position outside the grid");
  }
  int r = static_cast<int>(std::floor(s / cfg.dt));
  if (r < 0) r = 0;
  if (r > rows() - 2) r = rows() - 2;
  double ft = s / cfg.dt - r;
  if (ft < 0.0) ft = 0.0;
  if (ft > 1.0) ft = 1.0;

  int j = static_cast<int>(std::floor((x - g.x_min) / g.dx));
  if (j < 0) j = 0;
  if (j > g.n - 2) j = g.n - 2;
  double fx = (x - g.point(j)) / g.dx;
  if (fx < 0.0) fx = 0.0;
  if (fx > 1.0) fx = 1.0;

  const double a00 = phi_at(r, j), a01 = phi_at(r, j + 1);
  const double a10 = phi_at(r + 1, j), a11 = phi_at(r + 1, j + 1);
  const double lo = a00 + fx * (a01 - a00);
  const double hi = a10 + fx * (a11 - a10);
  return lo + ft * (hi - lo);
}

PfdeSolution solve_pfde(const PfdeConfig& cfg, PfdeScheme scheme, int store_stride,
                        bool drop_quadratic) {
  if (auto errs = cfg.validate(); !errs.empty()) {
    throw std::invalid_argument("solve_pfde: " + errs.front());
  }
  if (store_stride < 1) throw std::invalid_argument("solve_pfde: store_stride must be >= 1");

  const Grid1D& g = cfg.grid;
  const int n = g.n;
  const long long steps = cfg.steps();
  const double dt = cfg.dt;
  const double inv2dx2 = 1.0 / (2.0 * g.dx * g.dx);
  const double decay = std::exp(-cfg.c * dt);
  const double quad = drop_quadratic ? 0.0 : 0.25;

  std::vector<double> force(n);
  for (int i = 0; i < n; ++i) force[i] = cfg.lambda * psi_shifted(g.point(i), cfg.b);

  PfdeSolution sol;
  sol.cfg = cfg;
  sol.scheme = scheme;
  sol.store_stride = store_stride;

  std::vector<double> f(n, 0.0), m(n, 0.0), fn(n), mn(n);
  auto record = [&](long long k) {
    sol.times.push_back(static_cast<double>(k) * dt);
    sol.phi.insert(sol.phi.end(), f.begin(), f.end());
    sol.companion.insert(sol.companion.end(), m.begin(), m.end());
  };
  record(0);

  for (long long k = 0; k < steps; ++k) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
      // Reflecting ends via mirrored neighbors (zero-flux).
      const double fl = f[i == 0 ? 1 : i - 1];
      const double fr = f[i == n - 1 ? n - 2 : i + 1];
      const double lap = (fl - 2.0 * f[i] + fr) * inv2dx2;
      fn[i] = f[i] + dt * (lap - quad * f[i] * f[i] + cfg.c * (m[i] - f[i]) + force[i]);
      if (scheme == PfdeScheme::two_component) {
        mn[i] = m[i] + dt * cfg.c * (f[i] - m[i]);
      } else {
        mn[i] = decay * (m[i] + cfg.c * dt * f[i]);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(fn[i]) || !std::isfinite(mn[i])) {
        throw std::runtime_error("solve_pfde step " + std::to_string(k) +
                                 ": non-finite value at site " + std::to_string(i));
      }
    }
    f.swap(fn);
    m.swap(mn);
    if ((k + 1) % store_stride == 0 || k + 1 == steps) record(k + 1);
  }
  return sol;
}

double supersolution_residual(double alpha, double b, double c, double s, double x) {
  if (x >= b) throw std::domain_error("supersolution_residual: requires x < b");
  const double d = x - b;
  const double d2 = d * d;
  return alpha * (alpha - 12.0) / (4.0 * d2 * d2) + c * std::exp(-c * s) * alpha / d2;
}

Bound1Report verify_bound1(const PfdeSolution& sol, double alpha) {
  const Grid1D& g = sol.cfg.grid;
  const double b = sol.cfg.b;
  Bound1Report rep;
  rep.alpha = alpha;
  bool any = false;
  for (int r = 0; r < sol.rows(); ++r) {
    for (int i = 0; i < g.n; ++i) {
      const double x = g.point(i);
      if (x > b - g.dx + 1e-12) break;
      const double stat = sol.phi_at(r, i) * (x - b) * (x - b);
      if (!any || stat > rep.max_stat) {
        rep.max_stat = stat;
        rep.arg_s = sol.times[r];
        rep.arg_x = x;
        any = true;
      }
      if (x <= b / 2.0 + 1e-12 && stat > rep.max_stat_half) rep.max_stat_half = stat;
    }
  }
  if (!any) throw std::invalid_argument("verify_bound1: no grid points left of b - dx");
  rep.holds = rep.max_stat <= alpha;
  return rep;
}

EnvelopeReport verify_envelope(const PfdeSolution& sol, double t, double K) {
  const Grid1D& g = sol.cfg.grid;
  const double b = sol.cfg.b;
  if (t <= 0.0 || t > sol.cfg.t_max + 1e-9) {
    throw std::invalid_argument("verify_envelope: t outside the solved range");
  }
  const double cut = b - std::sqrt(t);
  EnvelopeReport rep;
  rep.K = K;
  int last_row = -1;
  bool any = false;
  for (int r = 0; r < sol.rows(); ++r) {
    if (sol.times[r] > t + 1e-9) break;
    last_row = r;
    for (int i = 0; i < g.n; ++i) {
      const double x = g.point(i);
      if (x >= cut) break;
      const double ratio =
          sol.phi_at(r, i) * t * std::exp((b - x) * (b - x) / (20.0 * t));
      if (!any || ratio > rep.K_star) {
        rep.K_star = ratio;
        rep.arg_s = sol.times[r];
        rep.arg_x = x;
        any = true;
      }
    }
  }
  if (!any || last_row < 0) {
    throw std::invalid_argument("verify_envelope: no grid points left of b - sqrt(t)");
  }
  rep.holds = std::isfinite(rep.K_star) && rep.K_star <= K;

  // Smoothed tail profile at the final time: the ratio should fall off
  // monotonically as x moves away from b.
  std::vector<double> ratio;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.point(i);
    if (x >= cut) break;
    ratio.push_back(sol.phi_at(last_row, i) * t *
                    std::exp((b - x) * (b - x) / (20.0 * t)));
  }
  std::vector<double> smooth;
  const int m = static_cast<int>(ratio.size());
  for (int i = 2; i + 2 < m; ++i) {
    smooth.push_back((ratio[i - 2] + ratio[i - 1] + ratio[i] + ratio[i + 1] + ratio[i + 2]) / 5.0);
  }
  double peak = 0.0;
  for (double v : smooth) peak = std::max(peak, v);
  rep.trend_ok = smooth.size() >= 2;
  for (std::size_t i = 0; i + 1 < smooth.size(); ++i) {
    if (smooth[i + 1] < smooth[i] - 1e-9 * peak) {
      rep.trend_ok = false;
      break;
    }
  }
  return rep;
}

}  // namespace seedbank
