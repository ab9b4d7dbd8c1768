#pragma once

// Closed-form reference quantities used to cross-check the simulators:
// the Gaussian transition kernel of (1/2)*Laplacian, its action on a
// Heaviside front, and the standard Gaussian upper tail bound.

namespace seedbank {

// Standard normal CDF, evaluated through erfc; relative error < 1e-10.
double normal_cdf(double z);

// G(t, x, y) = exp(-(x-y)^2 / (2t)) / sqrt(2 pi t); requires t > 0.
double heat_kernel(double t, double x, double y);

// (G_t 1_{(-inf, 0]})(x) = normal_cdf(-x / sqrt(t)); requires t > 0.
double heat_semigroup_heaviside(double t, double x);

// P(N(0,1) >= x) <= exp(-x^2/2) / (x sqrt(2 pi)); requires x > 0.
double gaussian_tail_bound(double x);

}  // namespace seedbank
