#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "seedbank/fk.hpp"
#include "seedbank/rng.hpp"
#include "seedbank/stats.hpp"

using namespace seedbank;

namespace {

PfdeSolution solved(double lambda, double b, double t_max) {
  PfdeConfig cfg;
  cfg.lambda = lambda;
  cfg.b = b;
  cfg.t_max = t_max;
  return solve_pfde(cfg, PfdeScheme::two_component, 1);
}

}  // namespace

TEST_CASE("zero forcing and zero horizon give exactly zero") {
  const PfdeSolution off = solved(0.0, 5.0, 0.5);
  const FkEstimate e0 = fk_estimate(0.5, 2.5, off, 100, 42);
  CHECK(e0.value == 0.0);
  CHECK(e0.stderr_ == 0.0);
  CHECK(e0.excluded == 0);

  const PfdeSolution on = solved(1.0, 5.0, 0.5);
  const FkEstimate es = fk_estimate(0.0, 2.5, on, 100, 42);
  CHECK(es.value == 0.0);
  CHECK(es.stderr_ == 0.0);
}

TEST_CASE("unit-weight mode equals the bare path integral, path by path") {
  const PfdeSolution sol = solved(1.0, 3.0, 0.5);
  const double s = 0.5, x = 2.5;
  const int n = 500;
  const std::uint64_t seed = 97;
  FkOptions opt;
  opt.unit_weight = true;
  const FkEstimate est = fk_estimate(s, x, sol, n, seed, opt);
  REQUIRE(est.excluded == 0);

  // Independent accumulation over the same path stream.
  std::vector<double> samples(n);
  for (int rep = 0; rep < n; ++rep) {
    SequenceRng rng(stream_key(replicate_seed(seed, rep), Stream::fk_paths));
    const OnOffPath path =
        sample_onoff_path(x, Marker::active, s, opt.dt_path, sol.cfg.c, sol.cfg.c, rng);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
      if (!path.active_interval[k]) continue;
      acc += sol.cfg.lambda * psi_shifted(path.positions[k], sol.cfg.b) *
             (path.times[k + 1] - path.times[k]);
    }
    samples[rep] = acc;
  }
  const McEstimate mc = mc_from_samples(samples);
  CHECK(est.value == mc.mean);
  CHECK(est.stderr_ == mc.se);
}

TEST_CASE("path estimate agrees with the grid solution") {
  // Probe inside the forcing support (x > b) where the solution is O(0.07),
  // so the tolerance below is a real constraint rather than 0 vs 0.
  const PfdeSolution sol = solved(1.0, 3.0, 0.5);
  const double s = 0.5, x = 3.5;
  const FkEstimate est = fk_estimate(s, x, sol, 20000, 12345);
  const double pde = sol.interp_phi(s, x);
  CHECK(pde > 0.05);  // the comparison is not vacuous
  CHECK(std::abs(est.value - pde) <= 3.0 * est.stderr_ + 0.01);
}

TEST_CASE("estimates track the forcing strength the way the solutions do") {
  const PfdeSolution lo = solved(1.0, 3.0, 0.5);
  const PfdeSolution hi = solved(10.0, 3.0, 0.5);
  const double s = 0.5, x = 2.5;
  const FkEstimate e1 = fk_estimate(s, x, lo, 20000, 777);
  const FkEstimate e10 = fk_estimate(s, x, hi, 20000, 778);
  const double p1 = lo.interp_phi(s, x);
  const double p10 = hi.interp_phi(s, x);
  CHECK(p10 > p1);
  CHECK(e10.value - e1.value >= -3.0 * (e1.stderr_ + e10.stderr_));
  CHECK(std::abs((e10.value - e1.value) - (p10 - p1)) <=
        3.0 * (e1.stderr_ + e10.stderr_) + 0.05);
}

TEST_CASE("doubling replicates shrinks the standard error like sqrt(2)") {
  const PfdeSolution sol = solved(1.0, 3.0, 0.5);
  const FkEstimate a = fk_estimate(0.5, 2.5, sol, 5000, 31);
  const FkEstimate b = fk_estimate(0.5, 2.5, sol, 10000, 31);
  const double ratio = b.stderr_ / a.stderr_;
  const double target = 1.0 / std::sqrt(2.0);
  CHECK(ratio >= 0.8 * target);
  CHECK(ratio <= 1.2 * target);
}

TEST_CASE("paths escaping a cramped domain raise a hard error") {
  PfdeConfig cfg;
  cfg.grid = Grid1D::make(-2.0, 2.0, 0.1);
  cfg.b = 0.0;
  cfg.t_max = 1.0;
  const PfdeSolution sol = solve_pfde(cfg, PfdeScheme::two_component, 1);
  CHECK_THROWS_AS((void)fk_estimate(1.0, 0.0, sol, 2000, 5), std::runtime_error);
}

TEST_CASE("malformed queries are rejected") {
  const PfdeSolution sol = solved(1.0, 5.0, 0.5);
  CHECK_THROWS_AS((void)fk_estimate(-0.1, 0.0, sol, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)fk_estimate(0.9, 0.0, sol, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)fk_estimate(0.5, 16.0, sol, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)fk_estimate(0.5, 0.0, sol, 1, 1), std::invalid_argument);
  FkOptions bad;
  bad.dt_path = 0.0;
  CHECK_THROWS_AS((void)fk_estimate(0.5, 0.0, sol, 100, 1, bad), std::invalid_argument);
  PfdeConfig cfg;
  cfg.t_max = 0.5;
  const PfdeSolution strided = solve_pfde(cfg, PfdeScheme::two_component, 5);
  CHECK_THROWS_AS((void)fk_estimate(0.5, 0.0, strided, 100, 1), std::invalid_argument);
}

TEST_CASE("frozen intervals can only lower the hitting frequency") {
  const StoppedTailReport rep =
      fk_stopped_tail(0.5, 4.0, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 4000, 99);
  CHECK(rep.level == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(rep.onoff_hit_prob <= rep.pure_hit_prob);
  CHECK(rep.pure_hit_prob > 0.0);  // the level is reachable from x = 4
  // Both frequencies sit under the wide gaussian envelope.
  const double envelope = std::exp(-(6.0 - 4.0) * (6.0 - 4.0) / (20.0 * 1.0));
  CHECK(rep.onoff_hit_prob <= envelope + 3.0 * rep.onoff_se);
  CHECK(rep.pure_hit_prob <= envelope + 3.0 * rep.pure_se);
}

TEST_CASE("a level ten units away is out of reach on short horizons") {
  const StoppedTailReport rep =
      fk_stopped_tail(0.5, -5.0, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 2000, 17);
  CHECK(rep.onoff_hit_prob <= 1e-3);
}

TEST_CASE("a dormant start that never wakes cannot hit the level") {
  const StoppedTailReport rep =
      fk_stopped_tail(0.5, 2.0, 1.0, 6.0, 1.0, 0.0, Marker::dormant, 0.004, 500, 23);
  CHECK(rep.onoff_hit_prob == 0.0);
  CHECK(rep.pure_hit_prob >= rep.onoff_hit_prob);
}

TEST_CASE("hitting comparisons reject malformed queries") {
  CHECK_THROWS_AS(
      (void)fk_stopped_tail(0.5, 0.0, -1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 100, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)fk_stopped_tail(-0.5, 0.0, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 100, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)fk_stopped_tail(0.5, 5.5, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 100, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)fk_stopped_tail(0.5, 0.0, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.004, 1, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)fk_stopped_tail(0.5, 0.0, 1.0, 6.0, 1.0, 1.0, Marker::active, 0.0, 100, 1),
      std::invalid_argument);
}
