#pragma once

#include <cstdint>
#include <vector>

namespace seedbank {

// Monte Carlo estimate: sample mean, stderr = sample std / sqrt(n).
struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
};

// Requires at least two samples; summation runs in index order so results do
// not depend on how the samples were produced.
McEstimate mc_from_samples(const std::vector<double>& samples);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion (z = 1.96 by default).
Interval wilson_interval(std::int64_t successes, std::int64_t n, double z = 1.96);

// Kolmogorov-Smirnov distance between the empirical law of lattice-valued
// samples (support spacing dx) and Normal(mu, sigma^2). The lattice CDF is
// compared at cell midpoints (continuity correction); without it the test
// statistic measures the atom sizes of the lattice law instead of the
// distributional distance. Returns sup-distance D.
double ks_lattice_vs_normal(std::vector<double> samples, double dx, double mu, double sigma);

// Asymptotic KS acceptance threshold at significance level ~1%: D <= 1.628/sqrt(n).
double ks_critical_1pct(std::int64_t n);

}  // namespace seedbank
