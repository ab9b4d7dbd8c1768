#include "seedbank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seedbank/analytic.hpp"

namespace seedbank {

McEstimate mc_from_samples(const std::vector<double>& samples) {
  const std::int64_t n = static_cast<std::int64_t>(samples.size());
  if (n < 2) throw std::invalid_argument("mc_from_samples: need at least two samples");
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) {
    const double d = s - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n - 1);
  McEstimate e;
  e.mean = mean;
  e.se = std::sqrt(var / static_cast<double>(n));
  e.n = n;
  return e;
}

Interval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
  if (n <= 0) throw std::invalid_argument("wilson_interval: n must be positive");
  if (successes < 0 || successes > n) throw std::invalid_argument("wilson_interval: successes out of range");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ks_lattice_vs_normal(std::vector<double> samples, double dx, double mu, double sigma) {
  if (samples.size() < 2) throw std::invalid_argument("ks_lattice_vs_normal: need samples");
  if (!(dx > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("ks_lattice_vs_normal: dx, sigma must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d_max = 0.0;
  size_t i = 0;
  while (i < samples.size()) {
    size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    // Empirical CDF just below the atom and at the atom, against the normal
    // CDF at the lattice cell boundaries around it.
    const double f_lo = static_cast<double>(i) / n;
    const double f_hi = static_cast<double>(j) / n;
    const double g_lo = normal_cdf((samples[i] - 0.5 * dx - mu) / sigma);
    const double g_hi = normal_cdf((samples[i] + 0.5 * dx - mu) / sigma);
    d_max = std::max(d_max, std::fabs(f_lo - g_lo));
    d_max = std::max(d_max, std::fabs(f_hi - g_hi));
    i = j;
  }
  return d_max;
}

double ks_critical_1pct(std::int64_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

}  // namespace seedbank
