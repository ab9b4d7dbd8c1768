#include "seedbank/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seedbank {

DualConfig DualConfig::from_sim(const SimConfig& cfg) {
  DualConfig d;
  d.dx = cfg.grid.dx;
  d.c = cfg.c;
  d.c_prime = cfg.c_prime;
  d.jump_rate = 1.0 / (cfg.grid.dx * cfg.grid.dx);
  d.coalesce_rate = 1.0 / cfg.grid.dx;
  return d;
}

DualCounts& DualCounts::operator+=(const DualCounts& o) {
  jumps += o.jumps;
  deactivations += o.deactivations;
  activations += o.activations;
  coalescences += o.coalescences;
  return *this;
}

DualState make_dual_state(const std::vector<WalkerStart>& starts, const DualConfig& rates) {
  if (starts.empty()) throw std::invalid_argument("make_dual_state: need at least one walker");
  DualState s;
  s.rates = rates;
  s.walkers.reserve(starts.size());
  int id = 0;
  for (const auto& w : starts) {
    const std::int64_t site = std::llround(w.x / rates.dx);
    if (std::fabs(static_cast<double>(site) * rates.dx - w.x) > 1e-9) {
      throw std::invalid_argument("make_dual_state: start position " + std::to_string(w.x) +
                                  " is not on the lattice");
    }
    s.walkers.push_back(Walker{id++, site, w.m});
  }
  return s;
}

namespace {

// Unordered co-located active pairs, enumerated as (i, j) with i < j in
// walker-vector order so event selection is deterministic.
int count_active_pairs(const std::vector<Walker>& ws) {
  int pairs = 0;
  const int m = static_cast<int>(ws.size());
  for (int i = 0; i < m; ++i) {
    if (ws[i].m != Marker::active) continue;
    for (int j = i + 1; j < m; ++j) {
      if (ws[j].m == Marker::active && ws[j].site == ws[i].site) ++pairs;
    }
  }
  return pairs;
}

}  // namespace

bool dual_step(DualState& state, double t_end, SequenceRng& rng, DualCounts& counts) {
  if (t_end < state.t) throw std::invalid_argument("dual_step: t_end is in the past");
  const auto& R = state.rates;
  int n_active = 0;
  int n_dormant = 0;
  for (const auto& w : state.walkers) {
    if (w.m == Marker::active) ++n_active;
    else ++n_dormant;
  }
  const int pairs = count_active_pairs(state.walkers);
  const double total = n_active * (R.jump_rate + R.c) + n_dormant * R.c_prime + pairs * R.coalesce_rate;
  if (total <= 0.0) {
    state.t = t_end;
    return false;
  }
  const double wait = rng.exponential(total);
  if (state.t + wait >= t_end) {
    state.t = t_end;
    return false;
  }
  state.t += wait;

  double r = rng.uniform() * total;
  auto& ws = state.walkers;
  const int m = static_cast<int>(ws.size());

  // 1. jumps (left then right per active walker)
  for (int i = 0; i < m; ++i) {
    if (ws[i].m != Marker::active) continue;
    const double half = 0.5 * R.jump_rate;
    if (r < half) {
      ws[i].site -= 1;
      ++counts.jumps;
      return true;
    }
    r -= half;
    if (r < half) {
      ws[i].site += 1;
      ++counts.jumps;
      return true;
    }
    r -= half;
  }
  // 2. active -> dormant
  for (int i = 0; i < m; ++i) {
    if (ws[i].m != Marker::active) continue;
    if (r < R.c) {
      ws[i].m = Marker::dormant;
      ++counts.deactivations;
      return true;
    }
    r -= R.c;
  }
  // 3. dormant -> active
  for (int i = 0; i < m; ++i) {
    if (ws[i].m != Marker::dormant) continue;
    if (r < R.c_prime) {
      ws[i].m = Marker::active;
      ++counts.activations;
      return true;
    }
    r -= R.c_prime;
  }
  // 4. coalescence; the lower id survives
  for (int i = 0; i < m; ++i) {
    if (ws[i].m != Marker::active) continue;
    for (int j = i + 1; j < m; ++j) {
      if (ws[j].m != Marker::active || ws[j].site != ws[i].site) continue;
      if (r < R.coalesce_rate) {
        const int keep = std::min(ws[i].id, ws[j].id);
        const int drop_idx = ws[i].id == keep ? j : i;
        ws.erase(ws.begin() + drop_idx);
        ++counts.coalescences;
        return true;
      }
      r -= R.coalesce_rate;
    }
  }
  // Rounding can push r past the last slot; attribute it to the final
  // nonempty category to keep the step total-rate exact.
  if (pairs > 0) {
    for (int i = m - 1; i >= 0; --i) {
      if (ws[i].m != Marker::active) continue;
      for (int j = i - 1; j >= 0; --j) {
        if (ws[j].m == Marker::active && ws[j].site == ws[i].site) {
          ws.erase(ws.begin() + i);
          ++counts.coalescences;
          return true;
        }
      }
    }
  }
  if (n_dormant > 0) {
    for (int i = m - 1; i >= 0; --i) {
      if (ws[i].m == Marker::dormant) {
        ws[i].m = Marker::active;
        ++counts.activations;
        return true;
      }
    }
  }
  for (int i = m - 1; i >= 0; --i) {
    if (ws[i].m == Marker::active) {
      if (n_active > 0 && R.c > 0.0) {
        ws[i].m = Marker::dormant;
        ++counts.deactivations;
      } else {
        ws[i].site += 1;
        ++counts.jumps;
      }
      return true;
    }
  }
  return true;
}

DualState run_dual(const std::vector<WalkerStart>& starts, double t_end, const DualConfig& rates,
                   SequenceRng& rng, DualCounts* counts) {
  if (t_end < 0.0) throw std::invalid_argument("run_dual: t_end must be nonnegative");
  DualState s = make_dual_state(starts, rates);
  DualCounts local;
  while (dual_step(s, t_end, rng, local)) {
  }
  if (counts) *counts += local;
  return s;
}

double heaviside_indicator(double x) { return x <= 1e-9 ? 1.0 : 0.0; }

DualMomentResult dual_moment_estimate(const std::vector<WalkerStart>& starts, double t, int replicates,
                                      const SimConfig& cfg, const std::function<double(double)>& u0,
                                      const std::function<double(double)>& v0) {
  if (replicates < 2) throw std::invalid_argument("dual_moment_estimate: need at least two replicates");
  if (t < 0.0) throw std::invalid_argument("dual_moment_estimate: t must be nonnegative");

  std::vector<WalkerStart> sorted = starts;
  std::sort(sorted.begin(), sorted.end(), [](const WalkerStart& a, const WalkerStart& b) {
    if (a.x != b.x) return a.x < b.x;
    return static_cast<int>(a.m) < static_cast<int>(b.m);
  });
  const DualConfig rates = DualConfig::from_sim(cfg);
  (void)make_dual_state(sorted, rates);  // validate lattice alignment before spawning replicates

  std::vector<double> samples(static_cast<size_t>(replicates));
  std::vector<DualCounts> counts(static_cast<size_t>(replicates));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (int rep = 0; rep < replicates; ++rep) {
    SequenceRng rng(stream_key(replicate_seed(cfg.seed, static_cast<std::uint64_t>(rep)), Stream::dual_events));
    DualCounts local;
    const DualState fin = run_dual(sorted, t, rates, rng, &local);
    double prod = 1.0;
    for (const auto& w : fin.walkers) {
      const double pos = static_cast<double>(w.site) * rates.dx;
      prod *= (w.m == Marker::active) ? u0(pos) : v0(pos);
    }
    samples[static_cast<size_t>(rep)] = prod;
    counts[static_cast<size_t>(rep)] = local;
  }

  DualMomentResult out;
  out.estimate = mc_from_samples(samples);
  for (const auto& c : counts) out.counts += c;
  return out;
}

double OnOffPath::active_time() const {
  double a = 0.0;
  for (size_t k = 0; k + 1 < times.size(); ++k) {
    if (active_interval[k]) a += times[k + 1] - times[k];
  }
  return a;
}

OnOffPath sample_onoff_path(double x0, Marker m0, double t_end, double dt_path, double on_to_off_rate,
                            double off_to_on_rate, SequenceRng& rng) {
  if (t_end < 0.0) throw std::invalid_argument("sample_onoff_path: t_end must be nonnegative");
  if (!(dt_path > 0.0)) throw std::invalid_argument("sample_onoff_path: dt_path must be positive");
  if (on_to_off_rate < 0.0 || off_to_on_rate < 0.0) {
    throw std::invalid_argument("sample_onoff_path: rates must be nonnegative");
  }
  OnOffPath path;
  path.x0 = x0;
  path.m0 = m0;
  path.times.push_back(0.0);
  path.positions.push_back(x0);
  if (t_end == 0.0) return path;

  constexpr double inf = std::numeric_limits<double>::infinity();
  double t = 0.0;
  double x = x0;
  Marker m = m0;
  auto draw_switch = [&](Marker state) {
    const double rate = state == Marker::active ? on_to_off_rate : off_to_on_rate;
    return rate > 0.0 ? t + rng.exponential(rate) : inf;
  };
  double next_switch = draw_switch(m);
  long long q = 1;  // next query epoch index

  while (t < t_end) {
    const double next_query = std::min(static_cast<double>(q) * dt_path, t_end);
    const double e = std::min(next_query, std::min(next_switch, t_end));
    if (m == Marker::active && e > t) x += rng.normal() * std::sqrt(e - t);
    path.active_interval.push_back(m == Marker::active ? 1 : 0);
    path.times.push_back(e);
    path.positions.push_back(x);
    const bool switched = e == next_switch;
    if (e == next_query && next_query < t_end) ++q;
    t = e;
    if (switched) {
      m = (m == Marker::active) ? Marker::dormant : Marker::active;
      path.switch_times.push_back(e);
      next_switch = draw_switch(m);
    }
  }
  return path;
}

}  // namespace seedbank
