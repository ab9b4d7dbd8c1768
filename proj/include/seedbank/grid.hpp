#pragma once

#include <limits>
#include <vector>

namespace seedbank {

inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();
inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
inline constexpr double kEdgeTol = 1e-12;

// Uniform 1-d lattice: point(i) = x_min + i*dx for i in [0, n).
struct Grid1D {
  double x_min = -15.0;
  double x_max = 15.0;
  double dx = 0.1;
  int n = 301;

  static Grid1D make(double x_min, double x_max, double dx);

  double point(int i) const { return x_min + static_cast<double>(i) * dx; }
  // Index of a position that must lie on the lattice (within 1e-9); throws otherwise.
  int index_of(double x) const;
  bool operator==(const Grid1D&) const = default;
};

// Scalar field sampled on a Grid1D.
struct LatticeField {
  Grid1D grid;
  std::vector<double> values;

  LatticeField() = default;
  LatticeField(const Grid1D& g, double fill) : grid(g), values(static_cast<size_t>(g.n), fill) {}
  LatticeField(const Grid1D& g, std::vector<double> vals) : grid(g), values(std::move(vals)) {}

  double& operator[](int i) { return values[static_cast<size_t>(i)]; }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

// Smallest grid point where f < 1 - tol; +inf when f >= 1 - tol everywhere.
double left_edge(const LatticeField& f, double edge_tol = kEdgeTol);
// Largest grid point where f > tol; -inf when f <= tol everywhere.
double right_edge(const LatticeField& f, double edge_tol = kEdgeTol);

struct EdgeReport {
  double left_u = kPlusInf;
  double right_u = kMinusInf;
  double left_v = kPlusInf;
  double right_v = kMinusInf;
};

EdgeReport edge_report(const LatticeField& u, const LatticeField& v, double edge_tol = kEdgeTol);

}  // namespace seedbank
