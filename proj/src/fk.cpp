#include "seedbank/fk.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seedbank/rng.hpp"
#include "seedbank/stats.hpp"

namespace seedbank {

FkEstimate fk_estimate(double s, double x, const PfdeSolution& sol, int replicates,
                       std::uint64_t seed, const FkOptions& options) {
  const Grid1D& g = sol.cfg.grid;
  if (s < 0.0 || s > sol.cfg.t_max + 1e-9) {
    throw std::invalid_argument("fk_estimate: s outside the solved range");
  }
  if (x < g.x_min || x > g.x_max) {
    throw std::invalid_argument("fk_estimate: x outside the grid");
  }
  if (replicates < 2) throw std::invalid_argument("fk_estimate: need at least 2 replicates");
  if (options.dt_path <= 0.0) throw std::invalid_argument("fk_estimate: dt_path must be positive");
  if (sol.store_stride != 1) {
    throw std::invalid_argument("fk_estimate: solution must be recorded at every step");
  }

  const double lambda = sol.cfg.lambda;
  const double b = sol.cfg.b;
  const double rate = sol.cfg.c;

  std::vector<double> slot(replicates, 0.0);
  std::vector<unsigned char> keep(replicates, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (int rep = 0; rep < replicates; ++rep) {
    SequenceRng rng(stream_key(replicate_seed(seed, rep), Stream::fk_paths));
    const OnOffPath path = sample_onoff_path(x, Marker::active, s, options.dt_path,
                                             rate, rate, rng);
    bool inside = true;
    for (double p : path.positions) {
      if (p < g.x_min || p > g.x_max) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;

    double discount_exponent = 0.0;
    double value = 0.0;
    const std::size_t intervals = path.times.size() - 1;
    for (std::size_t k = 0; k < intervals; ++k) {
      if (!path.active_interval[k]) continue;
      const double len = path.times[k + 1] - path.times[k];
      const double p = path.positions[k];
      value += lambda * psi_shifted(p, b) * std::exp(-discount_exponent) * len;
      if (!options.unit_weight) {
        discount_exponent += sol.interp_phi(s - path.times[k], p) * len;
      }
    }
    slot[rep] = value;
    keep[rep] = 1;
  }

  FkEstimate est;
  std::vector<double> samples;
  samples.reserve(replicates);
  for (int rep = 0; rep < replicates; ++rep) {
    if (keep[rep]) {
      samples.push_back(slot[rep]);
    } else {
      ++est.excluded;
    }
  }
  est.used = static_cast<int>(samples.size());
  if (est.excluded > options.max_excluded * replicates) {
    throw std::runtime_error("fk_estimate: " + std::to_string(est.excluded) + " of " +
                             std::to_string(replicates) +
                             " paths left the solved grid; enlarge the domain");
  }
  if (est.used < 2) throw std::runtime_error("fk_estimate: fewer than 2 usable paths");
  const McEstimate mc = mc_from_samples(samples);
  est.value = mc.mean;
  est.stderr_ = mc.se;
  return est;
}

StoppedTailReport fk_stopped_tail(double s, double x, double t, double b, double c,
                                  double c_prime, Marker start, double dt_path,
                                  int replicates, std::uint64_t seed) {
  if (t <= 0.0) throw std::invalid_argument("fk_stopped_tail: t must be positive");
  if (s < 0.0) throw std::invalid_argument("fk_stopped_tail: s must be nonnegative");
  if (dt_path <= 0.0) throw std::invalid_argument("fk_stopped_tail: dt_path must be positive");
  if (replicates < 2) throw std::invalid_argument("fk_stopped_tail: need at least 2 replicates");
  const double level = b - std::sqrt(t);
  if (x >= level) throw std::invalid_argument("fk_stopped_tail: start must lie below the level");

  std::vector<unsigned char> onoff_hit(replicates, 0), pure_hit(replicates, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (int rep = 0; rep < replicates; ++rep) {
    const std::uint64_t rs = replicate_seed(seed, rep);
    SequenceRng path_rng(stream_key(rs, Stream::onoff_path));
    const OnOffPath path = sample_onoff_path(x, start, s, dt_path, c, c_prime, path_rng);

    bool hit = false;
    for (double p : path.positions) {
      if (p >= level) {
        hit = true;
        break;
      }
    }
    onoff_hit[rep] = hit ? 1 : 0;

    // The plain diffusion reuses the path's embedded motion (identical while
    // the path is active) and keeps moving with fresh increments over the
    // wall time the on/off path spent frozen.
    bool pure = hit;
    if (!pure) {
      SequenceRng ext_rng(stream_key(rs, Stream::hit_extension));
      double remaining = s - path.active_time();
      double p = path.positions.back();
      while (remaining > 1e-12) {
        const double h = remaining < dt_path ? remaining : dt_path;
        p += ext_rng.normal() * std::sqrt(h);
        remaining -= h;
        if (p >= level) {
          pure = true;
          break;
        }
      }
    }
    pure_hit[rep] = pure ? 1 : 0;
  }

  StoppedTailReport rep_out;
  rep_out.level = level;
  rep_out.replicates = replicates;
  long long n_on = 0, n_pure = 0;
  for (int rep = 0; rep < replicates; ++rep) {
    n_on += onoff_hit[rep];
    n_pure += pure_hit[rep];
  }
  const double n = static_cast<double>(replicates);
  rep_out.onoff_hit_prob = static_cast<double>(n_on) / n;
  rep_out.pure_hit_prob = static_cast<double>(n_pure) / n;
  rep_out.onoff_se = std::sqrt(rep_out.onoff_hit_prob * (1.0 - rep_out.onoff_hit_prob) / n);
  rep_out.pure_se = std::sqrt(rep_out.pure_hit_prob * (1.0 - rep_out.pure_hit_prob) / n);
  return rep_out;
}

}  // namespace seedbank
