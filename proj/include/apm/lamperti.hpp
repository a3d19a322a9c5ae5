#pragma once

// Dilation machinery tying self-similarity in average SNR to stationarity in
// log-SNR: the inverse dilation change of variables, the numerical dilation
// spectrum, and the kernel-relationship integrator in adaptive and
// fixed-rule (Gauss-Chebyshev) forms.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "apm/curves.hpp"
#include "apm/quadrature.hpp"

namespace apm {

/// exp(H lambda) apm(exp(-lambda) gbar): maps SNR dilations to log-domain
/// translations.
inline double lamperti_inverse(const ApmCurve& apm, double hurst, AverageSnr gbar,
                               double lambda) {
  return std::exp(hurst * lambda) * apm(std::exp(-lambda) * gbar.value);
}

/// Dilation operator lambda^H apm(lambda gbar), lambda > 0.
inline double dilate(const ApmCurve& apm, double hurst, AverageSnr gbar,
                     double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("dilate: lambda must be > 0");
  return std::pow(lambda, hurst) * apm(lambda * gbar.value);
}

/// Numerical dilation spectrum
///   gbar^{H+i omega} int_0^inf beta^{-H-1-i omega} apm(beta) dbeta,
/// evaluated by a real/imaginary split of the oscillatory integral.
/// H must lie strictly inside the curve's existence window; |omega| > 10 is
/// refused because the oscillatory quadrature is not certifiable there.
inline Complex lds_numeric(const ApmCurve& apm, double hurst, double omega,
                           AverageSnr gbar, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("lds_numeric: tol must be > 0");
  if (!apm.hurst_window.contains(hurst))
    throw std::domain_error("lds_numeric: spectrum does not exist at this Hurst exponent");
  if (std::abs(omega) > 10.0)
    throw std::range_error("lds_numeric: |omega| > 10 not supported");
  auto re_part = [&](double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) return 0.0;
    const double lb = std::log(beta);
    return std::pow(beta, -hurst - 1.0) * std::cos(omega * lb) * apm(beta);
  };
  auto im_part = [&](double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) return 0.0;
    const double lb = std::log(beta);
    return -std::pow(beta, -hurst - 1.0) * std::sin(omega * lb) * apm(beta);
  };
  const Complex integral(integrate_semi_infinite(re_part, tol),
                         integrate_semi_infinite(im_part, tol));
  return std::pow(Complex(gbar.value, 0.0), Complex(hurst, omega)) * integral;
}

/// Adaptive evaluation of the relationship integral
/// int_0^inf Z(u) g(u gbar) du. Divergent pairings surface as
/// IntegrationError from the quadrature layer.
inline double apply_kernel(const Kernel& kernel, const ApmCurve& g, AverageSnr gbar,
                           double tol) {
  if (!(tol > 0.0)) throw std::domain_error("apply_kernel: tol must be > 0");
  auto f = [&](double u) {
    return u > 0.0 ? kernel.eval(u) * g(u * gbar.value) : 0.0;
  };
  return integrate_semi_infinite(f, tol);
}

/// Fixed-rule discretization of the same integral with the N-point
/// Gauss-Chebyshev rule on (0,inf).
inline double apply_kernel_gcq(const Kernel& kernel, const ApmCurve& g,
                               AverageSnr gbar, int n_points) {
  const QuadratureRule rule = gcq_rule(n_points);
  double sum = 0.0;
  for (int i = 0; i < rule.order; ++i)
    sum += rule.weights[i] * kernel.eval(rule.nodes[i]) * g(rule.nodes[i] * gbar.value);
  return sum;
}

}  // namespace apm
