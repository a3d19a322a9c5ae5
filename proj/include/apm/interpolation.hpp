#pragma once

// Barycentric Lagrange interpolation. Mathematically the classical product
// formula, numerically far better conditioned.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace apm {

/// Evaluates the degree-(N-1) interpolating polynomial through `points`
/// at `x`, using barycentric weights. Exact at every node.
inline double lagrange_interp(const std::vector<std::pair<double, double>>& points,
                              double x) {
  const std::size_t n = points.size();
  if (n == 0) throw std::domain_error("lagrange_interp: empty point list");
  if (n == 1) return points[0].second;

  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = points[j].first - points[k].first;
      if (d == 0.0) throw std::domain_error("lagrange_interp: duplicate abscissae");
      w[j] /= d;
    }
  }

  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = x - points[j].first;
    if (dx == 0.0) return points[j].second;
    const double t = w[j] / dx;
    num += t * points[j].second;
    den += t;
  }
  return num / den;
}

}  // namespace apm
