#pragma once

// Quadrature machinery: the Gauss-Chebyshev rule on (0,inf) used by the
// quadrature-based prediction technique, a general adaptive Gauss-Kronrod
// integrator, the semi-infinite wrapper built on the rational map
// u = t/(1-t), and a central finite difference.

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "apm/errors.hpp"

namespace apm {

/// Nodes (dilations) and weights of a positive quadrature rule on (0,inf).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Gauss-Chebyshev rule for integrals over (0,inf):
///   lambda_n = tan(pi/4 cos((2n-1)pi/2N) + pi/4)
///   w_n      = pi^2/(4N) sin((2n-1)pi/2N) sec^2(pi/4 cos((2n-1)pi/2N) + pi/4)
/// Nodes are returned in increasing order.
inline QuadratureRule gcq_rule(int n_points) {
  if (n_points < 1) throw std::domain_error("gcq_rule: requires N >= 1");
  QuadratureRule rule;
  rule.order = n_points;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  for (int n = 1; n <= n_points; ++n) {
    const double theta = (2.0 * n - 1.0) * M_PI / (2.0 * n_points);
    // the midpoint cosine is exactly zero; keep the middle node exactly 1
    const double cos_theta = (2 * n - 1 == n_points) ? 0.0 : std::cos(theta);
    const double arg = 0.25 * M_PI * cos_theta + 0.25 * M_PI;
    const double sec = 1.0 / std::cos(arg);
    // theta increases with n, so tan(arg) decreases; store reversed
    const int idx = n_points - n;
    rule.nodes[idx] = (cos_theta == 0.0) ? 1.0 : std::tan(arg);
    rule.weights[idx] = M_PI * M_PI / (4.0 * n_points) * std::sin(theta) * sec * sec;
  }
  return rule;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1,1].
inline void gauss_kronrod_15(const std::function<double(double)>& f, double a,
                             double b, double& result, double& err) {
  static const double xk[8] = {
      0.000000000000000, 0.207784955007898, 0.405845151377397,
      0.586087235467691, 0.741531185599394, 0.864864423359769,
      0.949107912342759, 0.991455371120813};
  static const double wk[8] = {
      0.209482141084728, 0.204432940075298, 0.190350578064785,
      0.169004726639267, 0.140653259715525, 0.104790010322250,
      0.063092092629979, 0.022935322010529};
  static const double wg[4] = {
      0.417959183673469, 0.381830050505119, 0.279705391489277,
      0.129484966168870};

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double k15 = wk[0] * f0;
  double g7 = wg[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * xk[i];
    const double fsum = f(c - dx) + f(c + dx);
    k15 += wk[i] * fsum;
    if (i % 2 == 0) g7 += wg[i / 2] * fsum;
  }
  result = k15 * h;
  const double diff = std::abs(k15 - g7) * std::abs(h);
  err = std::pow(200.0 * diff, 1.5);
  if (err > diff) err = diff;          // conservative cap
  if (err < 1e-18 * std::abs(result)) err = 1e-18 * std::abs(result);
}

struct Interval {
  double a, b, value, err;
  bool splittable;
  bool operator<(const Interval& o) const { return err < o.err; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a,b].
/// Throws IntegrationError (carrying the best estimate) if the error bound
/// cannot be brought under tol within the interval budget.
inline double integrate_adaptive(const std::function<double(double)>& f,
                                 double a, double b, double tol,
                                 std::size_t max_intervals = std::size_t{1} << 20) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: tol must be > 0");
  std::priority_queue<detail::Interval> heap;
  double value, err;
  detail::gauss_kronrod_15(f, a, b, value, err);
  heap.push({a, b, value, err, true});
  double total = value;
  double total_err = err;
  std::size_t count = 1;
  while (total_err > tol && count < max_intervals) {
    detail::Interval top = heap.top();
    if (!top.splittable) break;  // no interval can be refined any further
    heap.pop();
    const double m = 0.5 * (top.a + top.b);
    if (m <= top.a || m >= top.b) {  // width at floating-point resolution
      top.splittable = false;
      heap.push(top);
      continue;
    }
    double v1, e1, v2, e2;
    detail::gauss_kronrod_15(f, top.a, m, v1, e1);
    detail::gauss_kronrod_15(f, m, top.b, v2, e2);
    total += v1 + v2 - top.value;
    total_err += e1 + e2 - top.err;
    heap.push({top.a, m, v1, e1, true});
    heap.push({m, top.b, v2, e2, true});
    ++count;
  }
  // a NaN error bound (integrand blew up somewhere) must also fail
  if (!(total_err <= tol) || !std::isfinite(total))
    throw IntegrationError("integrate_adaptive: tolerance not reached", total,
                           total_err);
  return total;
}

/// Integral of f over (0,inf) via the rational map u = t/(1-t).
/// Handles integrable endpoint singularities u^{-s}, 0 < s < 1.
inline double integrate_semi_infinite(const std::function<double(double)>& f,
                                      double tol = 1e-10,
                                      std::size_t max_intervals = std::size_t{1} << 20) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_semi_infinite: tol must be > 0");
  auto mapped = [&f](double t) {
    const double om = 1.0 - t;
    if (om <= 0.0) return 0.0;  // u would overflow; convergent integrands vanish there
    const double u = t / om;
    return f(u) / (om * om);
  };
  return integrate_adaptive(mapped, 0.0, 1.0, tol, max_intervals);
}

/// Central difference (f(r+h) - f(r-h)) / 2h, requires r - h > 0.
inline double central_diff(const std::function<double(double)>& f, double r,
                           double h) {
  if (!(h > 0.0)) throw std::domain_error("central_diff: h must be > 0");
  if (!(r - h > 0.0)) throw std::domain_error("central_diff: requires r - h > 0");
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

}  // namespace apm
