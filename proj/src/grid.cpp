#include "seedbank/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seedbank {

Grid1D Grid1D::make(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("grid: dx must be positive");
  if (!(x_min < x_max)) throw std::invalid_argument("grid: x_min must be below x_max");
  const double span = (x_max - x_min) / dx;
  const long long cells = std::llround(span);
  if (cells < 2 || std::fabs(span - static_cast<double>(cells)) > 1e-6 * std::max(1.0, span)) {
    throw std::invalid_argument("grid: (x_max - x_min) must be an integer multiple of dx");
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.dx = dx;
  g.n = static_cast<int>(cells) + 1;
  return g;
}

int Grid1D::index_of(double x) const {
  const double pos = (x - x_min) / dx;
  const long long i = std::llround(pos);
  if (i < 0 || i >= n || std::fabs(point(static_cast<int>(i)) - x) > 1e-9) {
    throw std::invalid_argument("grid: position " + std::to_string(x) + " is not a lattice point");
  }
  return static_cast<int>(i);
}

double left_edge(const LatticeField& f, double edge_tol) {
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i) {
    if (f[i] < 1.0 - edge_tol) return f.grid.point(i);
  }
  return kPlusInf;
}

double right_edge(const LatticeField& f, double edge_tol) {
  const int n = f.grid.n;
  for (int i = n - 1; i >= 0; --i) {
    if (f[i] > edge_tol) return f.grid.point(i);
  }
  return kMinusInf;
}

EdgeReport edge_report(const LatticeField& u, const LatticeField& v, double edge_tol) {
  EdgeReport r;
  r.left_u = left_edge(u, edge_tol);
  r.right_u = right_edge(u, edge_tol);
  r.left_v = left_edge(v, edge_tol);
  r.right_v = right_edge(v, edge_tol);
  return r;
}

}  // namespace seedbank
