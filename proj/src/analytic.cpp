#include "seedbank/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace seedbank {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
}  // namespace

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double heat_kernel(double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
  const double d = x - y;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(kTwoPi * t);
}

double heat_semigroup_heaviside(double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("heat_semigroup_heaviside: t must be positive");
  return normal_cdf(-x / std::sqrt(t));
}

double gaussian_tail_bound(double x) {
  if (!(x > 0.0)) throw std::domain_error("gaussian_tail_bound: x must be positive");
  return std::exp(-0.5 * x * x) / (x * std::sqrt(kTwoPi));
}

}  // namespace seedbank
